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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace c2t::evaluation {

// Each coefficient is nullopt when either input is constant. All of them
// throw ValidationError when the inputs differ in length or hold fewer
// than three points.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
// Pearson on mid-ranks, so ties are handled by averaging.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);
// Kendall tau-b in O(n log n): tie-corrected for both variables.
std::optional<double> kendall_tau_b(std::span<const double> x, std::span<const double> y);

// 1-based mid-ranks (ties share the mean of their positions).
std::vector<double> mid_ranks(std::span<const double> v);

// Two-sided p-values. Pearson uses Student's t with n - 2 degrees of
// freedom; Spearman uses z = rho * sqrt(n - 1); Kendall uses the normal
// approximation with the tie-corrected variance. Results are floored at
// the smallest normal double so a perfect fit still reports p > 0.
double pearson_p_value(double r, std::size_t n);
double spearman_p_value(double rho, std::size_t n);
double kendall_p_value(std::span<const double> x, std::span<const double> y, double tau);

struct PitmanOptions {
  std::size_t exhaustive_cutoff = 20;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 13;
};

struct PitmanResult {
  double p = 1.0;
  std::size_t n = 0;
  bool exhaustive = true;
  std::size_t samples = 0;  // sign patterns evaluated
};

// Paired sign-flip permutation test on the mean difference, two-sided.
// Enumerates all 2^n patterns when n <= exhaustive_cutoff; otherwise
// draws mc_samples seeded patterns and reports (1 + hits) / (1 + samples).
// A pattern counts when |sum| reaches the observed |sum| up to a relative
// tolerance of 1e-12, so rounding never splits exact ties. Throws
// ValidationError for empty diffs or a cutoff above 40.
PitmanResult pitman_test(std::span<const double> diffs, const PitmanOptions& options = {});

}  // namespace c2t::evaluation
