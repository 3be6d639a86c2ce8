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

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c2t/cli/config.hpp"
#include "c2t/corpus/corpus.hpp"
#include "c2t/evaluation/report.hpp"
#include "c2t/keyphrase/keyphrase.hpp"

namespace c2t::cli {

enum class PipelineKind { kKw, kAtt, kP2t, kMi, kBaselineEval };

std::string_view pipeline_name(PipelineKind k);
PipelineKind pipeline_from_string(std::string_view s);

struct PipelineRequest {
  PipelineKind kind = PipelineKind::kMi;
  std::filesystem::path corpus;
  // Baseline generations ({"id", "output"}) that keyphrases are extracted
  // from. Without them the first reference of each example is used.
  std::optional<std::filesystem::path> sources;
  std::filesystem::path out_dir;
  bool evaluate = true;
  std::vector<std::string> command;
};

struct PipelineResult {
  std::vector<std::filesystem::path> outputs;
  std::filesystem::path manifest;
  std::optional<evaluation::MetricReport> report;
};

// Artifacts written to out_dir, by pipeline:
//   kw, att        augmented.jsonl [generations.jsonl report.json]
//   p2t            recombined.jsonl p2t.jsonl [generations.jsonl report.json]
//   mi             recombined.jsonl mi.jsonl generations.jsonl [report.json]
//   baseline-eval  generations.jsonl [report.json]
// Bracketed files need a generator provider (kw, att, baseline-eval) or
// inference-mode sources (p2t), and report.json needs `evaluate`.
// JSONL artifacts are streamed chunk by chunk through a quarantine file, so
// a failing stage leaves `<artifact>.quarantine` holding the completed
// chunks and no manifest. Errors are prefixed with the stage name.
// manifest.json is written last.
PipelineResult run_pipeline(const PipelineRequest& request, const RunConfig& config);

// Source text per example id: the `sources` generations when given, else
// the first reference.
std::map<std::string, std::string> extraction_sources(std::span<const corpus::Example> examples,
                                                      const std::optional<std::filesystem::path>& sources,
                                                      keyphrase::Origin& origin);

// Runs the generator over `inputs` (aligned with `ids`) on up to `workers`
// threads. Failures are rethrown naming the id.
std::vector<corpus::Generation> generate_all(std::span<const std::string> ids, std::span<const std::string> inputs,
                                             const providers::SequenceGenerator& generator,
                                             const providers::DecodeConfig& decode, std::size_t workers);

}  // namespace c2t::cli
