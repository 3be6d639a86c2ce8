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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "c2t/common/jsonl.hpp"
#include "c2t/evaluation/report.hpp"
#include "c2t/evaluation/statistics.hpp"

namespace c2t::evaluation {

struct Coefficient {
  double value = 0;
  double p = 1;
  bool significant = false;  // p < alpha
};

struct CorrelationEntry {
  std::size_t n = 0;
  // nullopt when the metric or the sizes are constant.
  std::optional<Coefficient> pearson;
  std::optional<Coefficient> spearman;
  std::optional<Coefficient> kendall_tau_b;
};

struct CorrelationReport {
  double alpha = 0.05;
  std::map<std::string, CorrelationEntry> metrics;
};

// Correlates concept-set size with every per-example metric in `report`.
// Throws LookupError when an id has no size and ValidationError when
// fewer than three examples are present.
CorrelationReport correlate(const MetricReport& report, const std::map<std::string, std::size_t>& sizes,
                            double alpha = 0.05);
OrderedJson to_json(const CorrelationReport& r);

struct SignificanceReport {
  std::string metric;
  double mean_a = 0;
  double mean_b = 0;
  PitmanResult test;
  std::uint64_t seed = 0;
};

// Paired test of report_a against report_b on one metric, pairing by id.
// Both reports must hold the same id set.
SignificanceReport significance(const MetricReport& a, const MetricReport& b, const std::string& metric,
                                const PitmanOptions& options = {});
OrderedJson to_json(const SignificanceReport& r);

using MetricValues = std::map<std::string, double>;

// Epoch with the highest `metric`; ties go to the earliest epoch. Throws
// ValidationError on an empty map or an epoch lacking the metric.
int select_epoch(const std::map<int, MetricValues>& per_epoch, const std::string& metric = "rouge2");

struct HparamChoice {
  std::int64_t winner = 0;
  std::map<std::int64_t, double> averages;
};

// Hyperparameter value with the highest seed-averaged `metric`; ties go to
// the smallest value, where averages within 1e-12 relative count as tied.
// Throws ValidationError on an empty grid, ragged seed counts, or a run
// lacking the metric.
HparamChoice select_hparam(const std::map<std::int64_t, std::vector<MetricValues>>& runs,
                           const std::string& metric = "rouge2");

}  // namespace c2t::evaluation
