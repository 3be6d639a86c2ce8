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

#include "c2t/cli/sweep.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/spdlog.h>

#include "c2t/augment/augment.hpp"
#include "c2t/common/error.hpp"
#include "c2t/common/parallel.hpp"

namespace c2t::cli {
namespace fs = std::filesystem;

namespace {

bool sweeps_k(PipelineKind k) { return k == PipelineKind::kKw || k == PipelineKind::kAtt; }

fs::path resolve(const fs::path& base, const fs::path& p) { return p.is_absolute() || base.empty() ? p : base / p; }

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// A metric report is one JSON object carrying the report schema tag;
// anything else is read as a generations file.
std::optional<evaluation::MetricReport> try_report(const fs::path& path) {
  const std::string body = read_file(path);
  const auto j = OrderedJson::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("schema")) return std::nullopt;
  if (j.at("schema") != evaluation::kReportSchema) return std::nullopt;
  return evaluation::report_from_json(j);
}

RunConfig cell_config(const RunConfig& base, PipelineKind method, std::int64_t value, std::uint64_t seed) {
  RunConfig c = base;
  c.seed = seed;
  c.extract.seed = seed;
  c.p2t_seed = seed;
  c.infill.enumeration_seed = seed;
  // Cells already run in parallel.
  c.workers = 1;
  c.infill.workers = 1;
  c.evaluate.workers = 1;
  c.augment.options.workers = 1;
  if (sweeps_k(method)) {
    c.augment.k = static_cast<std::size_t>(value);
  } else {
    c.extract.max_n = static_cast<std::size_t>(value);
  }
  c.validate();
  return c;
}

}  // namespace

void SweepSpec::validate() const {
  if (method == PipelineKind::kBaselineEval) {
    throw ValidationError("sweep method must be kw, att, p2t or mi");
  }
  if (grid.empty()) throw ValidationError("sweep grid must not be empty");
  if (seeds.empty()) throw ValidationError("sweep seeds must not be empty");
  if (sorted_unique(grid).size() != grid.size()) throw ValidationError("sweep grid has duplicate values");
  if (sorted_unique(seeds).size() != seeds.size()) throw ValidationError("sweep seeds have duplicates");
  for (const auto v : grid) {
    if (sweeps_k(method) && (v < 1 || v > static_cast<std::int64_t>(augment::kMaxAugment))) {
      throw ValidationError(fmt::format("grid value {} out of range: k must be in [1, {}]", v, augment::kMaxAugment));
    }
    if (!sweeps_k(method) && v < 2) {
      throw ValidationError(fmt::format("grid value {} out of range: max_n must be >= 2", v));
    }
  }
  if (metric.empty()) throw ValidationError("sweep metric must not be empty");
}

SweepSpec sweep_spec_from_json(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ValidationError("sweep spec must be a JSON object");
  SweepSpec s;
  try {
    s.method = pipeline_from_string(j.at("method").get<std::string>());
    s.grid = j.at("grid").get<std::vector<std::int64_t>>();
    if (j.contains("seeds")) s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    s.metric = j.value("metric", s.metric);
    if (j.contains("corpus")) s.corpus = resolve(base_dir, j.at("corpus").get<std::string>());
    if (j.contains("sources")) s.sources = resolve(base_dir, j.at("sources").get<std::string>());
    if (j.contains("runs")) {
      for (const auto& [value, by_seed] : j.at("runs").items()) {
        for (const auto& [seed, path] : by_seed.items()) {
          s.runs[std::stoll(value)][std::stoull(seed)] = resolve(base_dir, path.get<std::string>());
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("sweep spec: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ValidationError("sweep spec: runs keys must be integers (value -> seed -> path)");
  }
  s.validate();
  return s;
}

SweepSpec load_sweep_spec(const fs::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": malformed JSON: " + e.what());
  }
  return with_context(path.string(), [&] { return sweep_spec_from_json(j, path.parent_path()); });
}

SweepReport run_sweep(const SweepSpec& spec_in, const RunConfig& config, const fs::path& cells_dir,
                      const std::vector<std::string>& command) {
  spec_in.validate();
  SweepReport report;
  report.spec = spec_in;
  SweepSpec& spec = report.spec;
  spec.grid = sorted_unique(spec.grid);
  spec.seeds = sorted_unique(spec.seeds);

  for (const auto v : spec.grid) {
    for (const auto s : spec.seeds) report.cells.push_back({v, s, {}, {}});
  }

  if (!spec.runs.empty()) {
    std::vector<std::string> missing;
    for (const auto& c : report.cells) {
      const auto it = spec.runs.find(c.value);
      if (it == spec.runs.end() || !it->second.contains(c.seed)) {
        missing.push_back(fmt::format("value={} seed={}", c.value, c.seed));
      }
    }
    if (!missing.empty()) {
      throw ValidationError(fmt::format("incomplete sweep grid, missing runs: {}", fmt::join(missing, ", ")));
    }
    std::vector<std::string> extra;
    for (const auto& [v, by_seed] : spec.runs) {
      for (const auto& [s, _] : by_seed) {
        if (!std::binary_search(spec.grid.begin(), spec.grid.end(), v) ||
            !std::binary_search(spec.seeds.begin(), spec.seeds.end(), s)) {
          extra.push_back(fmt::format("value={} seed={}", v, s));
        }
      }
    }
    if (!extra.empty()) {
      throw ValidationError(fmt::format("runs outside the sweep grid: {}", fmt::join(extra, ", ")));
    }
    std::optional<std::vector<corpus::Example>> examples;
    for (auto& c : report.cells) {
      const fs::path& path = spec.runs.at(c.value).at(c.seed);
      c.source = path.string();
      auto loaded = try_report(path);
      if (!loaded) {
        if (!spec.corpus) {
          throw ValidationError(fmt::format("{} is a generations file; the sweep spec needs a corpus", c.source));
        }
        if (!examples) examples = corpus::load_corpus(*spec.corpus);
        const auto gens = corpus::load_generations(path);
        loaded = with_context(c.source, [&] { return evaluation::evaluate(*examples, gens, config.evaluate); });
      }
      c.metrics = loaded->aggregate;
    }
  } else {
    if (!spec.corpus) throw ValidationError("a sweep without listed runs needs a corpus to run cells inline");
    std::vector<RunConfig> configs;
    configs.reserve(report.cells.size());
    for (const auto& c : report.cells) configs.push_back(cell_config(config, spec.method, c.value, c.seed));
    parallel_for(report.cells.size(), config.workers, [&](std::size_t i) {
      auto& c = report.cells[i];
      PipelineRequest req;
      req.kind = spec.method;
      req.corpus = *spec.corpus;
      req.sources = spec.sources;
      req.out_dir = cells_dir / fmt::format("{}-{}-seed{}", pipeline_name(spec.method), c.value, c.seed);
      req.evaluate = true;
      req.command = command;
      const auto result = with_context(fmt::format("cell value={} seed={}", c.value, c.seed),
                                       [&] { return run_pipeline(req, configs[i]); });
      if (!result.report) {
        throw ValidationError(fmt::format("cell value={} seed={} produced no generations to evaluate "
                                          "(configure a generator provider)",
                                          c.value, c.seed));
      }
      c.source = req.out_dir.string();
      c.metrics = result.report->aggregate;
    });
  }

  std::map<std::int64_t, std::vector<evaluation::MetricValues>> runs;
  for (const auto& c : report.cells) runs[c.value].push_back(c.metrics);
  report.choice = evaluation::select_hparam(runs, spec.metric);
  spdlog::info("sweep {}: winner {} on {}", pipeline_name(spec.method), report.choice.winner, spec.metric);
  return report;
}

OrderedJson to_json(const SweepReport& r) {
  OrderedJson averages = OrderedJson::object();
  for (const auto& [v, avg] : r.choice.averages) averages[std::to_string(v)] = avg;
  OrderedJson cells = OrderedJson::array();
  for (const auto& c : r.cells) {
    OrderedJson metrics = OrderedJson::object();
    for (const auto& [m, x] : c.metrics) metrics[m] = x;
    cells.push_back({{"value", c.value}, {"seed", c.seed}, {"source", c.source}, {"metrics", metrics}});
  }
  return {{"schema", "c2t-sweep/1"},
          {"method", pipeline_name(r.spec.method)},
          {"hyperparameter", sweeps_k(r.spec.method) ? "k" : "max_n"},
          {"metric", r.spec.metric},
          {"grid", r.spec.grid},
          {"seeds", r.spec.seeds},
          {"winner", r.choice.winner},
          {"averages", averages},
          {"cells", cells}};
}

std::string sweep_table_tsv(const SweepReport& r) {
  std::set<std::string> names;
  for (const auto& c : r.cells) {
    for (const auto& [m, _] : c.metrics) names.insert(m);
  }
  std::string out = sweeps_k(r.spec.method) ? "k\tseed" : "max_n\tseed";
  for (const auto& m : names) out += "\t" + m;
  out += "\n";
  auto cell = [](const evaluation::MetricValues& values, const std::string& m) {
    const auto it = values.find(m);
    return it == values.end() ? std::string("NA") : fmt::format("{:.6f}", it->second);
  };
  for (const auto v : r.spec.grid) {
    std::map<std::string, std::pair<double, std::size_t>> sums;
    for (const auto& c : r.cells) {
      if (c.value != v) continue;
      out += fmt::format("{}\t{}", v, c.seed);
      for (const auto& m : names) {
        out += "\t" + cell(c.metrics, m);
        if (const auto it = c.metrics.find(m); it != c.metrics.end()) {
          sums[m].first += it->second;
          ++sums[m].second;
        }
      }
      out += "\n";
    }
    evaluation::MetricValues means;
    for (const auto& [m, s] : sums) means[m] = s.first / static_cast<double>(s.second);
    out += fmt::format("{}\tmean", v);
    for (const auto& m : names) out += "\t" + cell(means, m);
    out += "\n";
  }
  return out;
}

}  // namespace c2t::cli
