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

#include <cstdlib>
#include <string>

#include "c2t/simd/kernels.hpp"

namespace c2t::simd {
namespace {

struct Table {
  Isa isa;
  double (*dot)(std::span<const double>, std::span<const double>);
  double (*sum_squares)(std::span<const double>);
  std::uint64_t (*count_abs_at_least)(double, std::span<const double>, double);
};

Table resolve() {
  const char* forced = std::getenv("C2T_SIMD");
  const bool scalar_only = forced != nullptr && std::string(forced) == "scalar";
  if (!scalar_only) {
#ifdef C2T_SIMD_HAVE_AVX2
    if (avx2::supported()) return {Isa::kAvx2, avx2::dot, avx2::sum_squares, avx2::count_abs_at_least};
#endif
#ifdef C2T_SIMD_HAVE_NEON
    return {Isa::kNeon, neon::dot, neon::sum_squares, neon::count_abs_at_least};
#endif
  }
  return {Isa::kScalar, scalar::dot, scalar::sum_squares, scalar::count_abs_at_least};
}

const Table& table() {
  static const Table t = resolve();
  return t;
}

}  // namespace

Isa active_isa() { return table().isa; }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
    case Isa::kScalar:
      break;
  }
  return "scalar";
}

double dot(std::span<const double> a, std::span<const double> b) { return table().dot(a, b); }

double sum_squares(std::span<const double> a) { return table().sum_squares(a); }

std::uint64_t count_abs_at_least(double offset, std::span<const double> values, double threshold) {
  return table().count_abs_at_least(offset, values, threshold);
}

}  // namespace c2t::simd
