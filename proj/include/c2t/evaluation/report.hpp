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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c2t/common/jsonl.hpp"
#include "c2t/corpus/corpus.hpp"
#include "c2t/evaluation/coverage.hpp"

namespace c2t::evaluation {

inline constexpr std::string_view kReportSchema = "sapphire-report/1";

// Metric names computed in-process, in report order.
const std::vector<std::string>& native_metrics();
// Metric names that need an external scorer.
const std::vector<std::string>& adapter_metrics();

// Expands the groups "bleu" (bleu1..bleu4) and "rouge" (rouge1, rouge2,
// rougeL), removes duplicates keeping first position, and rejects unknown
// names with ValidationError.
std::vector<std::string> expand_metrics(std::span<const std::string> requested);

struct MetricReport {
  std::vector<std::string> ids;
  // metric -> one value per entry of `ids`
  std::map<std::string, std::vector<double>> per_example;
  std::map<std::string, double> aggregate;
  std::map<std::string, std::string> notes;
  // Requested metrics that could not be computed.
  std::vector<std::string> absent;
  Json provenance = Json::object();

  bool has(const std::string& metric) const { return per_example.contains(metric); }
  // Throws LookupError for a metric not in the report.
  const std::vector<double>& values(const std::string& metric) const;
};

OrderedJson to_json(const MetricReport& r);
// Throws ParseError on a wrong "schema" tag or malformed per-example data.
MetricReport report_from_json(const OrderedJson& j);
MetricReport load_report(const std::filesystem::path& path);
void write_report(const std::filesystem::path& path, const MetricReport& r);

// Source of per-example scores for metrics without a native implementation.
// Scores are on the scorer's own 0..1 scale.
class MetricAdapter {
 public:
  virtual ~MetricAdapter() = default;
  virtual std::string describe() const = 0;
  // Throws Error when the scorer is unavailable or returns the wrong count.
  virtual std::vector<double> score(std::span<const std::string> ids, std::span<const std::string> candidates,
                                    std::span<const std::vector<std::string>> references) = 0;
};

// Config kinds:
//   {"kind": "constant", "value": v}
//   {"kind": "file", "path": p, "field": "score"}  JSONL of {"id", field}
//   {"kind": "http", "endpoint": url, "timeout_s": 60}  POST /score
// Throws ValidationError for an unknown kind or missing fields.
std::unique_ptr<MetricAdapter> make_adapter(const std::string& metric, const Json& config);

struct EvaluationConfig {
  std::vector<std::string> metrics = {"coverage", "bleu", "rouge", "cider"};
  MatchMode coverage_mode = MatchMode::kStem;
  Json adapters = Json::object();  // metric name -> adapter config
  std::size_t workers = 1;
};

EvaluationConfig evaluation_config_from_json(const Json& j);
OrderedJson to_json(const EvaluationConfig& c);

// Scores one generation per example, reported in example order. A
// generation id missing from the corpus, or an example without a
// generation, raises LookupError naming the ids. Adapter metrics with no
// configured or reachable scorer are listed in `absent` with a warning;
// no value is invented for them.
MetricReport evaluate(std::span<const corpus::Example> examples, std::span<const corpus::Generation> generations,
                      const EvaluationConfig& config = {});

}  // namespace c2t::evaluation
