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

#include "c2t/evaluation/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "c2t/common/error.hpp"
#include "c2t/common/random.hpp"
#include "c2t/simd/kernels.hpp"

namespace c2t::evaluation {
namespace {

constexpr std::size_t kTableBits = 8;

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("correlation inputs differ in length (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) throw ValidationError("correlation needs at least 3 points, got " + std::to_string(x.size()));
}

double floor_p(double p) { return std::clamp(p, std::numeric_limits<double>::min(), 1.0); }

double two_sided_normal(double z) {
  const boost::math::normal_distribution<double> nd;
  return floor_p(2.0 * boost::math::cdf(boost::math::complement(nd, std::abs(z))));
}

// Number of tied pairs summed over runs of equal values in sorted order.
template <typename Eq>
std::uint64_t tied_pairs(std::span<const std::size_t> order, Eq eq) {
  std::uint64_t t = 0;
  std::uint64_t run = 1;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    if (i < order.size() && eq(order[i - 1], order[i])) {
      ++run;
    } else {
      t += run * (run - 1) / 2;
      run = 1;
    }
  }
  return t;
}

// Sorts idx[lo, hi) by y and returns the number of strict inversions.
std::uint64_t merge_count(std::vector<std::size_t>& idx, std::vector<std::size_t>& buf, std::size_t lo, std::size_t hi,
                          std::span<const double> y) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = merge_count(idx, buf, lo, mid, y) + merge_count(idx, buf, mid, hi, y);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (y[idx[j]] < y[idx[i]]) {
      swaps += mid - i;
      buf[k++] = idx[j++];
    } else {
      buf[k++] = idx[i++];
    }
  }
  while (i < mid) buf[k++] = idx[i++];
  while (j < hi) buf[k++] = idx[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            idx.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

// Sum over tie groups of t(t-1)(2t+5), t(t-1), t(t-1)(t-2).
struct TieSums {
  double v = 0;
  double t1 = 0;
  double t2 = 0;
};

TieSums tie_sums(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  TieSums out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double t = static_cast<double>(j - i);
    out.v += t * (t - 1) * (2 * t + 5);
    out.t1 += t * (t - 1);
    out.t2 += t * (t - 1) * (t - 2);
    i = j;
  }
  return out;
}

}  // namespace

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const bool x_const = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
  const bool y_const = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
  if (x_const || y_const || sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> mid_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = mid_ranks(x);
  const auto ry = mid_ranks(y);
  return pearson(rx, ry);
}

std::optional<double> kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });
  const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t n1 = tied_pairs(idx, [&](std::size_t a, std::size_t b) { return x[a] == x[b]; });
  const std::uint64_t n3 =
      tied_pairs(idx, [&](std::size_t a, std::size_t b) { return x[a] == x[b] && y[a] == y[b]; });
  std::vector<std::size_t> buf(n);
  const std::uint64_t swaps = merge_count(idx, buf, 0, n, y);
  const std::uint64_t n2 = tied_pairs(idx, [&](std::size_t a, std::size_t b) { return y[a] == y[b]; });
  if (n1 == n0 || n2 == n0) return std::nullopt;
  // concordant - discordant = n0 - n1 - n2 + n3 - 2 * swaps
  const double num = static_cast<double>(n0) - static_cast<double>(n1) - static_cast<double>(n2) +
                     static_cast<double>(n3) - 2.0 * static_cast<double>(swaps);
  const double den = std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
  return std::clamp(num / den, -1.0, 1.0);
}

double pearson_p_value(double r, std::size_t n) {
  if (n < 3) throw ValidationError("p-value needs at least 3 points");
  const double df = static_cast<double>(n - 2);
  if (std::abs(r) >= 1.0) return floor_p(0.0);
  const double t = r * std::sqrt(df / ((1.0 - r) * (1.0 + r)));
  const boost::math::students_t_distribution<double> dist(df);
  return floor_p(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double spearman_p_value(double rho, std::size_t n) {
  if (n < 3) throw ValidationError("p-value needs at least 3 points");
  return two_sided_normal(rho * std::sqrt(static_cast<double>(n - 1)));
}

double kendall_p_value(std::span<const double> x, std::span<const double> y, double tau) {
  check_pair(x, y);
  const double n = static_cast<double>(x.size());
  const auto tx = tie_sums(x);
  const auto ty = tie_sums(y);
  const double n0 = n * (n - 1) / 2;
  const double n1 = tx.t1 / 2;
  const double n2 = ty.t1 / 2;
  const double var_s = (n * (n - 1) * (2 * n + 5) - tx.v - ty.v) / 18.0 +
                       tx.t2 * ty.t2 / (9.0 * n * (n - 1) * (n - 2)) + tx.t1 * ty.t1 / (2.0 * n * (n - 1));
  if (var_s <= 0) return 1.0;
  // S recovered from tau-b and the tie-adjusted denominator.
  const double s = tau * std::sqrt((n0 - n1) * (n0 - n2));
  return two_sided_normal(s / std::sqrt(var_s));
}

PitmanResult pitman_test(std::span<const double> diffs, const PitmanOptions& options) {
  if (diffs.empty()) throw ValidationError("pitman_test needs at least one difference");
  if (options.exhaustive_cutoff > 40) throw ValidationError("exhaustive_cutoff above 40 is not supported");
  const std::size_t n = diffs.size();
  double observed = 0;
  double scale = 0;
  for (double d : diffs) {
    observed += d;
    scale += std::abs(d);
  }
  const double threshold = std::abs(observed) - 1e-12 * scale;

  PitmanResult result;
  result.n = n;
  if (n <= options.exhaustive_cutoff) {
    // Partial sums of the low block form a table; the high block supplies
    // the offset added to every entry.
    const std::size_t low = std::min(n, kTableBits);
    std::vector<double> table(std::size_t{1} << low);
    for (std::size_t m = 0; m < table.size(); ++m) {
      double s = 0;
      for (std::size_t b = 0; b < low; ++b) s += (m >> b & 1U) ? -diffs[b] : diffs[b];
      table[m] = s;
    }
    const std::size_t high = n - low;
    std::uint64_t hits = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << high); ++m) {
      double offset = 0;
      for (std::size_t b = 0; b < high; ++b) offset += (m >> b & 1U) ? -diffs[low + b] : diffs[low + b];
      hits += simd::count_abs_at_least(offset, table, threshold);
    }
    const double patterns = std::ldexp(1.0, static_cast<int>(n));
    result.p = std::min(1.0, static_cast<double>(hits) / patterns);
    result.exhaustive = true;
    result.samples = static_cast<std::size_t>(patterns);
    return result;
  }

  if (options.mc_samples == 0) throw ValidationError("mc_samples must be positive");
  Rng rng(options.seed);
  std::uint64_t hits = 0;
  for (std::size_t s = 0; s < options.mc_samples; ++s) {
    double sum = 0;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 64 == 0) bits = rng.next();
      sum += (bits & 1U) ? -diffs[i] : diffs[i];
      bits >>= 1U;
    }
    if (std::abs(sum) >= threshold) ++hits;
  }
  result.p = static_cast<double>(hits + 1) / static_cast<double>(options.mc_samples + 1);
  result.exhaustive = false;
  result.samples = options.mc_samples;
  return result;
}

}  // namespace c2t::evaluation
