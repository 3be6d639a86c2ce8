// Copyright 2026 The c2tkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "c2t/evaluation/report.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "c2t/common/error.hpp"
#include "c2t/common/parallel.hpp"
#include "c2t/evaluation/metrics.hpp"

namespace c2t::evaluation {
namespace {

constexpr std::size_t kMaxNamedIds = 5;

std::string name_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < kMaxNamedIds; ++i) out += (i ? ", '" : "'") + ids[i] + "'";
  if (ids.size() > kMaxNamedIds) out += " and " + std::to_string(ids.size() - kMaxNamedIds) + " more";
  return out;
}

double mean(std::span<const double> v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

class ConstantAdapter final : public MetricAdapter {
 public:
  explicit ConstantAdapter(double v) : value_(v) {}
  std::string describe() const override { return "constant:" + std::to_string(value_); }
  std::vector<double> score(std::span<const std::string> ids, std::span<const std::string>,
                            std::span<const std::vector<std::string>>) override {
    return std::vector<double>(ids.size(), value_);
  }

 private:
  double value_;
};

class FileAdapter final : public MetricAdapter {
 public:
  FileAdapter(std::filesystem::path path, std::string field) : path_(std::move(path)), field_(std::move(field)) {}
  std::string describe() const override { return "file:" + path_.string(); }
  std::vector<double> score(std::span<const std::string> ids, std::span<const std::string>,
                            std::span<const std::vector<std::string>>) override {
    if (!std::filesystem::exists(path_)) throw Error("score file " + path_.string() + " does not exist");
    std::unordered_map<std::string, double> by_id;
    jsonl::for_each(path_, [&](const Json& j, std::size_t line) {
      if (!j.contains("id") || !j.contains(field_) || !j.at(field_).is_number()) {
        throw ParseError(path_.string() + ": line " + std::to_string(line) + ": expected 'id' and numeric '" +
                         field_ + "'");
      }
      by_id[j.at("id").get<std::string>()] = j.at(field_).get<double>();
    });
    std::vector<double> out;
    std::vector<std::string> missing;
    for (const auto& id : ids) {
      if (auto it = by_id.find(id); it != by_id.end()) {
        out.push_back(it->second);
      } else {
        missing.push_back(id);
      }
    }
    if (!missing.empty()) throw Error(path_.string() + " has no score for " + name_ids(missing));
    return out;
  }

 private:
  std::filesystem::path path_;
  std::string field_;
};

// POST /score {"metric", "ids", "candidates", "references"} -> {"scores"}.
class HttpAdapter final : public MetricAdapter {
 public:
  HttpAdapter(std::string metric, std::string endpoint, int timeout_s)
      : metric_(std::move(metric)), endpoint_(std::move(endpoint)), timeout_s_(timeout_s) {}
  std::string describe() const override { return "http:" + endpoint_; }
  std::vector<double> score(std::span<const std::string> ids, std::span<const std::string> candidates,
                            std::span<const std::vector<std::string>> references) override {
    httplib::Client cli(endpoint_);
    cli.set_connection_timeout(timeout_s_);
    cli.set_read_timeout(timeout_s_);
    const Json body{{"metric", metric_},
                    {"ids", std::vector<std::string>(ids.begin(), ids.end())},
                    {"candidates", std::vector<std::string>(candidates.begin(), candidates.end())},
                    {"references", std::vector<std::vector<std::string>>(references.begin(), references.end())}};
    auto res = cli.Post("/score", body.dump(), "application/json");
    if (!res) throw ConnectionError(metric_ + " scorer unreachable at " + endpoint_ + "/score");
    if (res->status != 200) throw ProviderError(metric_ + " scorer returned HTTP " + std::to_string(res->status));
    try {
      auto scores = Json::parse(res->body).at("scores").get<std::vector<double>>();
      if (scores.size() != ids.size()) throw ProviderError(metric_ + " scorer returned the wrong number of scores");
      return scores;
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(metric_ + " scorer sent a malformed response: " + e.what());
    }
  }

 private:
  std::string metric_;
  std::string endpoint_;
  int timeout_s_;
};

std::string adapter_env(const std::string& metric) {
  std::string v = "C2T_ENDPOINT_METRIC_";
  for (char c : metric) v.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return v;
}

OrderedJson values_json(const std::map<std::string, double>& m) {
  OrderedJson j = OrderedJson::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

}  // namespace

const std::vector<std::string>& native_metrics() {
  static const std::vector<std::string> m = {"coverage", "bleu1",  "bleu2",  "bleu3", "bleu4",
                                             "rouge1",   "rouge2", "rougeL", "cider"};
  return m;
}

const std::vector<std::string>& adapter_metrics() {
  static const std::vector<std::string> m = {"meteor", "spice", "bertscore"};
  return m;
}

std::vector<std::string> expand_metrics(std::span<const std::string> requested) {
  std::vector<std::string> out;
  const auto add = [&](const std::string& m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  const auto known = [](const std::vector<std::string>& list, const std::string& m) {
    return std::find(list.begin(), list.end(), m) != list.end();
  };
  for (const auto& m : requested) {
    if (m == "bleu") {
      for (const char* s : {"bleu1", "bleu2", "bleu3", "bleu4"}) add(s);
    } else if (m == "rouge") {
      for (const char* s : {"rouge1", "rouge2", "rougeL"}) add(s);
    } else if (known(native_metrics(), m) || known(adapter_metrics(), m)) {
      add(m);
    } else {
      throw ValidationError("unknown metric '" + m +
                            "'; expected coverage, bleu[1-4], rouge[1,2,L], cider, meteor, spice or bertscore");
    }
  }
  if (out.empty()) throw ValidationError("no metrics requested");
  return out;
}

const std::vector<double>& MetricReport::values(const std::string& metric) const {
  auto it = per_example.find(metric);
  if (it == per_example.end()) throw LookupError("metric '" + metric + "' is not in the report");
  return it->second;
}

OrderedJson to_json(const MetricReport& r) {
  OrderedJson per = OrderedJson::object();
  for (std::size_t i = 0; i < r.ids.size(); ++i) {
    OrderedJson row = OrderedJson::object();
    for (const auto& [m, v] : r.per_example) row[m] = v[i];
    per[r.ids[i]] = std::move(row);
  }
  OrderedJson notes = OrderedJson::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  return OrderedJson{{"schema", kReportSchema},       {"n", r.ids.size()},  {"aggregate", values_json(r.aggregate)},
                     {"per_example", std::move(per)}, {"notes", notes},     {"absent", r.absent},
                     {"provenance", OrderedJson::parse(r.provenance.dump())}};
}

MetricReport report_from_json(const OrderedJson& j) {
  try {
    if (!j.is_object() || j.value("schema", std::string()) != kReportSchema) {
      throw ParseError("not a metric report (expected \"schema\": \"" + std::string(kReportSchema) + "\")");
    }
    MetricReport r;
    for (const auto& [k, v] : j.at("aggregate").items()) r.aggregate[k] = v.get<double>();
    if (j.contains("notes")) {
      for (const auto& [k, v] : j.at("notes").items()) r.notes[k] = v.get<std::string>();
    }
    if (j.contains("absent")) r.absent = j.at("absent").get<std::vector<std::string>>();
    if (j.contains("provenance")) r.provenance = Json::parse(j.at("provenance").dump());
    const auto& per = j.at("per_example");
    for (const auto& [id, row] : per.items()) {
      r.ids.push_back(id);
      for (const auto& [m, v] : row.items()) r.per_example[m].push_back(v.get<double>());
    }
    for (const auto& [m, v] : r.per_example) {
      if (v.size() != r.ids.size()) throw ParseError("metric '" + m + "' is missing for some examples");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed metric report: ") + e.what());
  }
}

MetricReport load_report(const std::filesystem::path& path) {
  try {
    const auto ordered = OrderedJson::parse(read_file(path));
    return with_context(path.string(), [&] { return report_from_json(ordered); });
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_report(const std::filesystem::path& path, const MetricReport& r) {
  write_file_atomic(path, to_json(r).dump(2) + "\n");
}

std::unique_ptr<MetricAdapter> make_adapter(const std::string& metric, const Json& config) {
  const std::string kind = config.value("kind", std::string());
  if (kind == "constant") {
    if (!config.contains("value") || !config.at("value").is_number()) {
      throw ValidationError(metric + " adapter: \"constant\" needs a numeric \"value\"");
    }
    return std::make_unique<ConstantAdapter>(config.at("value").get<double>());
  }
  if (kind == "file") {
    if (!config.contains("path")) throw ValidationError(metric + " adapter: \"file\" needs a \"path\"");
    return std::make_unique<FileAdapter>(config.at("path").get<std::string>(), config.value("field", "score"));
  }
  if (kind == "http") {
    std::string endpoint = config.value("endpoint", std::string());
    if (const char* env = std::getenv(adapter_env(metric).c_str()); env != nullptr && *env != '\0') endpoint = env;
    if (endpoint.empty()) {
      throw ValidationError(metric + " adapter: \"http\" needs an \"endpoint\" (or " + adapter_env(metric) + ")");
    }
    return std::make_unique<HttpAdapter>(metric, endpoint, config.value("timeout_s", 60));
  }
  throw ValidationError(metric + " adapter: unknown kind '" + kind + "' (expected constant, file or http)");
}

EvaluationConfig evaluation_config_from_json(const Json& j) {
  EvaluationConfig c;
  try {
    if (j.contains("metrics")) c.metrics = j.at("metrics").get<std::vector<std::string>>();
    const std::string mode = j.value("coverage_mode", std::string("stem"));
    if (mode == "stem") {
      c.coverage_mode = MatchMode::kStem;
    } else if (mode == "exact") {
      c.coverage_mode = MatchMode::kExact;
    } else {
      throw ValidationError("coverage_mode must be \"stem\" or \"exact\", got '" + mode + "'");
    }
    c.adapters = j.value("adapters", Json::object());
    c.workers = j.value("workers", std::size_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("evaluation config: ") + e.what());
  }
  expand_metrics(c.metrics);
  return c;
}

OrderedJson to_json(const EvaluationConfig& c) {
  return OrderedJson{{"metrics", c.metrics},
                     {"coverage_mode", c.coverage_mode == MatchMode::kStem ? "stem" : "exact"},
                     {"adapters", OrderedJson::parse(c.adapters.dump())},
                     {"workers", c.workers}};
}

MetricReport evaluate(std::span<const corpus::Example> examples, std::span<const corpus::Generation> generations,
                      const EvaluationConfig& config) {
  const auto metrics = expand_metrics(config.metrics);
  if (examples.empty()) throw ValidationError("evaluation needs at least one example");

  std::unordered_map<std::string, std::size_t> gen_index;
  for (std::size_t i = 0; i < generations.size(); ++i) gen_index.emplace(generations[i].id, i);
  std::unordered_set<std::string> example_ids;
  std::vector<std::string> missing;
  for (const auto& e : examples) {
    example_ids.insert(e.id);
    if (!gen_index.contains(e.id)) missing.push_back(e.id);
  }
  if (!missing.empty()) throw LookupError("no generation for example(s) " + name_ids(missing));
  std::vector<std::string> extra;
  for (const auto& g : generations) {
    if (!example_ids.contains(g.id)) extra.push_back(g.id);
  }
  if (!extra.empty()) throw LookupError("generation id(s) not in the corpus: " + name_ids(extra));

  const std::size_t n = examples.size();
  MetricReport report;
  std::vector<std::string> candidates(n);
  std::vector<std::vector<std::string>> references(n);
  for (std::size_t i = 0; i < n; ++i) {
    report.ids.push_back(examples[i].id);
    candidates[i] = generations[gen_index.at(examples[i].id)].text;
    references[i] = examples[i].references;
  }
  const bool needs_refs = std::any_of(metrics.begin(), metrics.end(), [](const std::string& m) {
    return m != "coverage" && std::find(adapter_metrics().begin(), adapter_metrics().end(), m) == adapter_metrics().end();
  });
  if (needs_refs) {
    for (std::size_t i = 0; i < n; ++i) {
      if (references[i].empty()) {
        throw ValidationError("example '" + examples[i].id + "' has no references for reference-based metrics");
      }
    }
  }

  std::vector<TokenizedPair> pairs(n);
  if (needs_refs) {
    parallel_for(n, config.workers, [&](std::size_t i) {
      pairs[i].candidate = metric_tokens(candidates[i]);
      for (const auto& r : references[i]) pairs[i].references.push_back(metric_tokens(r));
    });
  }

  for (const auto& m : metrics) {
    std::vector<double> values(n, 0.0);
    if (m == "coverage") {
      parallel_for(n, config.workers, [&](std::size_t i) {
        values[i] = coverage(examples[i].concepts, candidates[i], config.coverage_mode);
      });
      report.aggregate[m] = mean(values);
      report.notes[m] = std::string("mean of per-example coverage, ") +
                        (config.coverage_mode == MatchMode::kStem ? "stem" : "exact") + " matching";
    } else if (m.starts_with("bleu")) {
      const int order = m.back() - '0';
      parallel_for(n, config.workers, [&](std::size_t i) { values[i] = sentence_bleu(pairs[i], order); });
      report.aggregate[m] = bleu(pairs, order);
      report.notes[m] = "aggregate is corpus-level BLEU; per-example values are add-one smoothed sentence BLEU";
    } else if (m.starts_with("rouge")) {
      const auto variant = m == "rouge1" ? RougeVariant::k1 : m == "rouge2" ? RougeVariant::k2 : RougeVariant::kL;
      parallel_for(n, config.workers, [&](std::size_t i) { values[i] = rouge(pairs[i], variant); });
      report.aggregate[m] = mean(values);
      report.notes[m] = "mean of per-example F1, best reference per example";
    } else if (m == "cider") {
      values = cider(pairs);
      report.aggregate[m] = mean(values);
      report.notes[m] = "corpus idf; CIDEr-D x10 convention, then x10 to the published scale";
    } else {
      if (!config.adapters.contains(m)) {
        spdlog::warn("metric '{}' needs an external scorer and none is configured; leaving it out of the report", m);
        report.absent.push_back(m);
        continue;
      }
      try {
        auto adapter = make_adapter(m, config.adapters.at(m));
        auto raw = adapter->score(report.ids, candidates, references);
        for (std::size_t i = 0; i < n; ++i) values[i] = 100.0 * raw[i];
        report.provenance["adapters"][m] = adapter->describe();
      } catch (const Error& e) {
        spdlog::warn("metric '{}' unavailable: {}; leaving it out of the report", m, e.what());
        report.absent.push_back(m);
        continue;
      }
      report.aggregate[m] = mean(values);
      report.notes[m] = "external scorer, scores multiplied by 100, mean of per-example values";
    }
    report.per_example[m] = std::move(values);
  }
  report.provenance["metrics"] = metrics;
  report.provenance["tokenizer"] = "lowercase words, punctuation removed";
  return report;
}

}  // namespace c2t::evaluation
