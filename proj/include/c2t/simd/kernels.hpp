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
#include <span>
#include <string_view>

// Numeric inner loops with a scalar reference path and vector variants
// chosen once at runtime. Set C2T_SIMD=scalar to force the reference path.
namespace c2t::simd {

enum class Isa { kScalar, kAvx2, kNeon };

Isa active_isa();
std::string_view isa_name(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a);

// Number of j with |offset + values[j]| >= threshold.
std::uint64_t count_abs_at_least(double offset, std::span<const double> values, double threshold);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a);
std::uint64_t count_abs_at_least(double offset, std::span<const double> values, double threshold);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define C2T_SIMD_HAVE_AVX2 1
namespace avx2 {
bool supported();
double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a);
std::uint64_t count_abs_at_least(double offset, std::span<const double> values, double threshold);
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define C2T_SIMD_HAVE_NEON 1
namespace neon {
double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a);
std::uint64_t count_abs_at_least(double offset, std::span<const double> values, double threshold);
}  // namespace neon
#endif

}  // namespace c2t::simd
