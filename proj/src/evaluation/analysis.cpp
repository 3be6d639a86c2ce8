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

#include "c2t/evaluation/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "c2t/common/error.hpp"

namespace c2t::evaluation {
namespace {

// Seed averages this close count as equal, so rounding in the mean never
// overrides the smallest-value tie rule.
constexpr double kTieTolerance = 1e-12;

OrderedJson coefficient_json(const std::optional<Coefficient>& c) {
  if (!c) return nullptr;
  return OrderedJson{{"value", c->value}, {"p", c->p}, {"significant", c->significant}};
}

double average(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double metric_of(const MetricValues& m, const std::string& metric, const std::string& where) {
  auto it = m.find(metric);
  if (it == m.end()) throw ValidationError(where + " has no '" + metric + "' value");
  return it->second;
}

}  // namespace

CorrelationReport correlate(const MetricReport& report, const std::map<std::string, std::size_t>& sizes, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw ValidationError("alpha must lie in (0, 1)");
  const std::set<std::string> distinct(report.ids.begin(), report.ids.end());
  if (distinct.size() < 3) throw ValidationError("correlation needs at least 3 distinct examples");
  std::vector<double> x;
  x.reserve(report.ids.size());
  for (const auto& id : report.ids) {
    auto it = sizes.find(id);
    if (it == sizes.end()) throw LookupError("no concept-set size for example '" + id + "'");
    x.push_back(static_cast<double>(it->second));
  }
  CorrelationReport out;
  out.alpha = alpha;
  const auto wrap = [&](std::optional<double> v, auto p_of) -> std::optional<Coefficient> {
    if (!v) return std::nullopt;
    const double p = p_of(*v);
    return Coefficient{*v, p, p < alpha};
  };
  for (const auto& [metric, y] : report.per_example) {
    CorrelationEntry e;
    e.n = y.size();
    e.pearson = wrap(pearson(x, y), [&](double r) { return pearson_p_value(r, e.n); });
    e.spearman = wrap(spearman(x, y), [&](double r) { return spearman_p_value(r, e.n); });
    e.kendall_tau_b = wrap(kendall_tau_b(x, y), [&](double t) { return kendall_p_value(x, y, t); });
    out.metrics[metric] = e;
  }
  return out;
}

OrderedJson to_json(const CorrelationReport& r) {
  OrderedJson metrics = OrderedJson::object();
  for (const auto& [m, e] : r.metrics) {
    metrics[m] = OrderedJson{{"n", e.n},
                             {"pearson", coefficient_json(e.pearson)},
                             {"spearman", coefficient_json(e.spearman)},
                             {"kendall_tau_b", coefficient_json(e.kendall_tau_b)}};
  }
  return OrderedJson{{"schema", kReportSchema}, {"kind", "correlation"}, {"alpha", r.alpha}, {"metrics", metrics}};
}

SignificanceReport significance(const MetricReport& a, const MetricReport& b, const std::string& metric,
                                const PitmanOptions& options) {
  const auto& va = a.values(metric);
  const auto& vb = b.values(metric);
  std::map<std::string, double> b_by_id;
  for (std::size_t i = 0; i < b.ids.size(); ++i) b_by_id[b.ids[i]] = vb[i];
  if (b_by_id.size() != a.ids.size()) {
    throw ValidationError("paired test needs the same examples in both reports (" + std::to_string(a.ids.size()) +
                          " vs " + std::to_string(b_by_id.size()) + ")");
  }
  std::vector<double> diffs;
  std::vector<double> bs;
  diffs.reserve(va.size());
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    auto it = b_by_id.find(a.ids[i]);
    if (it == b_by_id.end()) throw LookupError("example '" + a.ids[i] + "' is missing from the second report");
    diffs.push_back(va[i] - it->second);
    bs.push_back(it->second);
  }
  SignificanceReport r;
  r.metric = metric;
  r.mean_a = average(va);
  r.mean_b = average(bs);
  r.test = pitman_test(diffs, options);
  r.seed = options.seed;
  return r;
}

OrderedJson to_json(const SignificanceReport& r) {
  return OrderedJson{{"schema", kReportSchema},
                     {"kind", "significance"},
                     {"test", "pitman-sign-flip"},
                     {"metric", r.metric},
                     {"n", r.test.n},
                     {"mean_a", r.mean_a},
                     {"mean_b", r.mean_b},
                     {"mean_diff", r.mean_a - r.mean_b},
                     {"p_value", r.test.p},
                     {"exhaustive", r.test.exhaustive},
                     {"samples", r.test.samples},
                     {"seed", r.seed}};
}

int select_epoch(const std::map<int, MetricValues>& per_epoch, const std::string& metric) {
  if (per_epoch.empty()) throw ValidationError("select_epoch needs at least one epoch");
  int best = 0;
  double best_value = 0;
  bool first = true;
  for (const auto& [epoch, values] : per_epoch) {
    const double v = metric_of(values, metric, "epoch " + std::to_string(epoch));
    if (first || v > best_value) {
      best = epoch;
      best_value = v;
      first = false;
    }
  }
  return best;
}

HparamChoice select_hparam(const std::map<std::int64_t, std::vector<MetricValues>>& runs, const std::string& metric) {
  if (runs.empty()) throw ValidationError("select_hparam needs at least one hyperparameter value");
  const std::size_t seeds = runs.begin()->second.size();
  HparamChoice out;
  bool first = true;
  double best = 0;
  for (const auto& [h, per_seed] : runs) {
    if (per_seed.empty() || per_seed.size() != seeds) {
      throw ValidationError("ragged seed counts: value " + std::to_string(h) + " has " +
                            std::to_string(per_seed.size()) + " runs, expected " + std::to_string(seeds));
    }
    std::vector<double> v;
    for (std::size_t s = 0; s < per_seed.size(); ++s) {
      v.push_back(metric_of(per_seed[s], metric, "value " + std::to_string(h) + " seed run " + std::to_string(s)));
    }
    const double avg = average(v);
    out.averages[h] = avg;
    if (first || avg > best + kTieTolerance * std::max(std::abs(avg), std::abs(best))) {
      out.winner = h;
      best = avg;
      first = false;
    }
  }
  return out;
}

}  // namespace c2t::evaluation
