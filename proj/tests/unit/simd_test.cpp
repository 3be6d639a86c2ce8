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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "c2t/common/random.hpp"
#include "c2t/simd/kernels.hpp"

namespace c2t::simd {
namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform() * 2 - 1;
  return v;
}

TEST(Simd, DispatchReportsAnIsa) {
  const auto name = isa_name(active_isa());
  EXPECT_TRUE(name == "scalar" || name == "avx2" || name == "neon");
}

TEST(Simd, VariantsAgreeWithScalarAcrossLengths) {
  Rng rng(3);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    const double ref_dot = scalar::dot(a, b);
    const double ref_sq = scalar::sum_squares(a);
    const double tol = 1e-12 * (1.0 + static_cast<double>(n));
    EXPECT_NEAR(dot(a, b), ref_dot, tol) << n;
    EXPECT_NEAR(sum_squares(a), ref_sq, tol) << n;
    for (double offset : {-0.5, 0.0, 0.25}) {
      for (double thr : {0.0, 0.3, 1.0}) {
        EXPECT_EQ(count_abs_at_least(offset, a, thr), scalar::count_abs_at_least(offset, a, thr)) << n;
      }
    }
#ifdef C2T_SIMD_HAVE_AVX2
    if (avx2::supported()) {
      EXPECT_NEAR(avx2::dot(a, b), ref_dot, tol);
      EXPECT_NEAR(avx2::sum_squares(a), ref_sq, tol);
      EXPECT_EQ(avx2::count_abs_at_least(0.1, a, 0.5), scalar::count_abs_at_least(0.1, a, 0.5));
    }
#endif
#ifdef C2T_SIMD_HAVE_NEON
    EXPECT_NEAR(neon::dot(a, b), ref_dot, tol);
    EXPECT_NEAR(neon::sum_squares(a), ref_sq, tol);
    EXPECT_EQ(neon::count_abs_at_least(0.1, a, 0.5), scalar::count_abs_at_least(0.1, a, 0.5));
#endif
  }
}

TEST(Simd, CountIncludesExactBoundary) {
  const std::vector<double> v = {1.0, -1.0, 2.0, -3.0, 0.0, 0.5, -0.5, 1.0, 1.0};
  // |1 + v| = 2, 0, 3, 2, 1, 1.5, 0.5, 2, 2
  EXPECT_EQ(scalar::count_abs_at_least(1.0, v, 2.0), 5u);
  EXPECT_EQ(count_abs_at_least(1.0, v, 2.0), 5u);
}

}  // namespace
}  // namespace c2t::simd
