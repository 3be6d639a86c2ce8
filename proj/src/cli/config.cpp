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

#include "c2t/cli/config.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "c2t/common/error.hpp"
#include "c2t/common/text.hpp"

namespace c2t::cli {
namespace {

constexpr std::array<std::string_view, 10> kSections = {"seed",  "workers", "extract", "augment",  "p2t",
                                                        "decode", "infill", "evaluate", "providers", "comment"};
constexpr std::array<std::string_view, 5> kRoles = {"embedder", "attention", "scorer", "infiller", "generator"};

void reject_unknown(const Json& j, std::span<const std::string_view> known, std::string_view where) {
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

augment::HeadAggregation heads_from_string(const std::string& s) {
  if (s == "mean") return augment::HeadAggregation::kMean;
  if (s == "sum") return augment::HeadAggregation::kSum;
  throw ValidationError("augment.heads must be \"mean\" or \"sum\", got '" + s + "'");
}

AugmentSection augment_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("augment section must be an object");
  static constexpr std::array<std::string_view, 6> known = {"method", "k",             "rank",
                                                            "heads",  "att_stopwords", "skip_errors"};
  reject_unknown(j, known, "augment");
  AugmentSection s;
  if (j.contains("method")) s.method = augment::method_from_string(j.at("method").get<std::string>());
  s.k = j.value("k", s.k);
  if (j.contains("rank")) s.options.rank = augment::rank_from_string(j.at("rank").get<std::string>());
  if (j.contains("heads")) s.options.heads = heads_from_string(j.at("heads").get<std::string>());
  if (j.contains("att_stopwords")) {
    for (const auto& w : j.at("att_stopwords")) s.options.att_stopwords.insert(text::to_lower(w.get<std::string>()));
  }
  s.options.skip_errors = j.value("skip_errors", false);
  return s;
}

template <typename T>
std::shared_ptr<T> load_role(const RunConfig& c, const std::string& role,
                             std::shared_ptr<T> (*loader)(const Json&)) {
  if (!has_provider(c, role)) {
    throw ValidationError("no " + role + " provider configured (set providers." + role + " in the config)");
  }
  return with_context("providers." + role, [&] { return loader(c.providers.at(role)); });
}

}  // namespace

void RunConfig::validate() const {
  if (workers == 0) throw ValidationError("workers must be >= 1");
  if (augment.k == 0 || augment.k > augment::kMaxAugment) {
    throw ValidationError("augment.k must be in [1, " + std::to_string(augment::kMaxAugment) + "]");
  }
  extract.validate();
  decode.validate();
  infill.validate();
  evaluation::expand_metrics(evaluate.metrics);
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  reject_unknown(j, kSections, "config");
  RunConfig c;
  try {
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    // Sections inherit the global seed and worker count unless they set their own.
    c.extract.seed = c.seed;
    c.p2t_seed = c.seed;
    c.infill.enumeration_seed = c.seed;
    c.infill.workers = c.workers;
    c.evaluate.workers = c.workers;
    if (j.contains("extract")) {
      c.extract = keyphrase::extraction_config_from_json(j.at("extract"));
      if (!j.at("extract").contains("seed")) c.extract.seed = c.seed;
    }
    if (j.contains("augment")) c.augment = augment_from_json(j.at("augment"));
    if (j.contains("p2t")) {
      const Json& p = j.at("p2t");
      if (!p.is_object()) throw ValidationError("p2t section must be an object");
      static constexpr std::array<std::string_view, 1> known = {"seed"};
      reject_unknown(p, known, "p2t");
      c.p2t_seed = p.value("seed", c.p2t_seed);
    }
    if (j.contains("decode")) c.decode = providers::decode_config_from_json(j.at("decode"));
    if (j.contains("infill")) {
      const Json& f = j.at("infill");
      c.infill = infill::infill_config_from_json(f);
      if (!f.contains("enumeration_seed")) c.infill.enumeration_seed = c.seed;
      if (!f.contains("workers")) c.infill.workers = c.workers;
    }
    if (j.contains("evaluate")) {
      const Json& e = j.at("evaluate");
      c.evaluate = evaluation::evaluation_config_from_json(e);
      if (!e.contains("workers")) c.evaluate.workers = c.workers;
    }
    if (j.contains("providers")) {
      const Json& p = j.at("providers");
      if (!p.is_object()) throw ValidationError("providers section must be an object");
      reject_unknown(p, kRoles, "providers");
      c.providers = p;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  c.augment.options.workers = c.workers;
  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": malformed JSON: " + e.what());
  }
  return with_context(path.string(), [&] { return run_config_from_json(j); });
}

OrderedJson to_json(const RunConfig& c) {
  const auto& a = c.augment;
  std::vector<std::string> att_stop(a.options.att_stopwords.begin(), a.options.att_stopwords.end());
  std::sort(att_stop.begin(), att_stop.end());
  OrderedJson out;
  out["seed"] = c.seed;
  out["workers"] = c.workers;
  out["extract"] = keyphrase::to_json(c.extract);
  out["augment"] = {{"method", augment::method_name(a.method)},
                    {"k", a.k},
                    {"rank", a.options.rank == augment::Rank::kBest ? "best" : "worst"},
                    {"heads", a.options.heads == augment::HeadAggregation::kMean ? "mean" : "sum"},
                    {"att_stopwords", att_stop},
                    {"skip_errors", a.options.skip_errors}};
  out["p2t"] = {{"seed", c.p2t_seed}};
  out["decode"] = providers::to_json(c.decode);
  out["infill"] = infill::to_json(c.infill);
  out["evaluate"] = evaluation::to_json(c.evaluate);
  out["providers"] = OrderedJson::parse(c.providers.dump());
  return out;
}

bool has_provider(const RunConfig& c, const std::string& role) {
  return c.providers.is_object() && c.providers.contains(role) && !c.providers.at(role).is_null();
}

std::shared_ptr<providers::ContextualEmbedder> embedder_for(const RunConfig& c) {
  return load_role(c, "embedder", &providers::load_embedder);
}
std::shared_ptr<providers::AttentionProvider> attention_for(const RunConfig& c) {
  return load_role(c, "attention", &providers::load_attention);
}
std::shared_ptr<providers::PerplexityScorer> scorer_for(const RunConfig& c) {
  return load_role(c, "scorer", &providers::load_scorer);
}
std::shared_ptr<providers::MaskInfiller> infiller_for(const RunConfig& c) {
  return load_role(c, "infiller", &providers::load_infiller);
}
std::shared_ptr<providers::SequenceGenerator> generator_for(const RunConfig& c) {
  return load_role(c, "generator", &providers::load_generator);
}

}  // namespace c2t::cli
