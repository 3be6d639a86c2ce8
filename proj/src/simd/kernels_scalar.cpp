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

#include <cmath>

#include "c2t/simd/kernels.hpp"

namespace c2t::simd::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares(std::span<const double> a) { return dot(a, a); }

std::uint64_t count_abs_at_least(double offset, std::span<const double> values, double threshold) {
  std::uint64_t n = 0;
  for (double v : values) n += std::fabs(offset + v) >= threshold ? 1 : 0;
  return n;
}

}  // namespace c2t::simd::scalar
