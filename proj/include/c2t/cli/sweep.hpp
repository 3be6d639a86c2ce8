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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "c2t/cli/config.hpp"
#include "c2t/cli/pipeline.hpp"
#include "c2t/evaluation/analysis.hpp"

namespace c2t::cli {

// Hyperparameter grid over one method. The swept value is augment.k for
// kw/att and extract.max_n for p2t/mi.
struct SweepSpec {
  PipelineKind method = PipelineKind::kAtt;
  std::vector<std::int64_t> grid;
  std::vector<std::uint64_t> seeds = {13, 14};
  std::string metric = "rouge2";
  // value -> seed -> report.json or generations file. Empty means every
  // cell is run inline through run_pipeline.
  std::map<std::int64_t, std::map<std::uint64_t, std::filesystem::path>> runs;
  std::optional<std::filesystem::path> corpus;   // needed for generation files and inline runs
  std::optional<std::filesystem::path> sources;  // forwarded to inline p2t/mi runs

  void validate() const;
};

// Relative run, corpus and sources paths resolve against `base_dir`.
SweepSpec sweep_spec_from_json(const Json& j, const std::filesystem::path& base_dir = {});
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepCell {
  std::int64_t value = 0;
  std::uint64_t seed = 0;
  evaluation::MetricValues metrics;  // aggregate metrics of the run
  std::string source;                // report, generations file or inline run directory
};

struct SweepReport {
  SweepSpec spec;
  std::vector<SweepCell> cells;  // sorted by (value, seed)
  evaluation::HparamChoice choice;
};

// Collects per-cell dev metrics (running missing cells inline when no runs
// are listed), then picks the winner with select_hparam. Listed runs must
// cover every (value, seed) cell; otherwise ValidationError listing the
// missing cells. The result does not depend on grid or seed order.
// Inline cells run in parallel and each keeps its own manifest under
// `cells_dir`.
SweepReport run_sweep(const SweepSpec& spec, const RunConfig& config, const std::filesystem::path& cells_dir,
                      const std::vector<std::string>& command = {});

OrderedJson to_json(const SweepReport& r);

// Tab-separated table: one row per cell and one "mean" row per value, with
// a column per aggregate metric (sorted by name).
std::string sweep_table_tsv(const SweepReport& r);

}  // namespace c2t::cli
