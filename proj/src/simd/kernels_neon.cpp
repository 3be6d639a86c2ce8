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

#include <arm_neon.h>

#include <cmath>

#include "c2t/simd/kernels.hpp"

namespace c2t::simd::neon {

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a.data() + i + 2), vld1q_f64(b.data() + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares(std::span<const double> a) { return dot(a, a); }

std::uint64_t count_abs_at_least(double offset, std::span<const double> values, double threshold) {
  const std::size_t n = values.size();
  const float64x2_t off = vdupq_n_f64(offset);
  const float64x2_t thr = vdupq_n_f64(threshold);
  std::uint64_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t mag = vabsq_f64(vaddq_f64(off, vld1q_f64(values.data() + i)));
    const uint64x2_t ge = vcgeq_f64(mag, thr);
    count += (vgetq_lane_u64(ge, 0) & 1U) + (vgetq_lane_u64(ge, 1) & 1U);
  }
  for (; i < n; ++i) count += std::fabs(offset + values[i]) >= threshold ? 1 : 0;
  return count;
}

}  // namespace c2t::simd::neon
