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

#include "c2t/cli/training.hpp"

#include <array>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "c2t/common/error.hpp"
#include "c2t/providers/providers.hpp"

namespace c2t::cli {
namespace {

constexpr std::array<std::string_view, 4> kMethods = {"baseline", "kw", "att", "p2t"};

struct Profile {
  std::string_view name;
  std::string_view model;
  std::size_t batch_size;
  std::size_t warmup_steps;
  std::array<double, 4> learning_rates;  // indexed like kMethods
};

constexpr std::array<Profile, 4> kProfiles = {{
    {"bart-base", "facebook/bart-base", 128, 400, {3e-05, 2e-05, 3e-05, 1e-05}},
    {"bart-large", "facebook/bart-large", 32, 500, {3e-05, 2e-05, 2e-05, 5e-06}},
    {"t5-base", "t5-base", 128, 400, {5e-05, 5e-05, 5e-05, 1e-05}},
    {"t5-large", "t5-large", 16, 400, {2e-05, 2e-05, 2e-05, 5e-06}},
}};

constexpr std::size_t kMaxSequenceLength = 32;

std::size_t method_index(std::string_view method) {
  if (method == "kw-aug") method = "kw";
  if (method == "att-aug") method = "att";
  for (std::size_t i = 0; i < kMethods.size(); ++i) {
    if (kMethods[i] == method) return i;
  }
  if (method == "mi") {
    throw ValidationError("method 'mi' needs no training; it decodes with the baseline model");
  }
  throw ValidationError(fmt::format("unknown training method '{}' (expected one of: {})", method,
                                    fmt::join(kMethods, ", ")));
}

}  // namespace

std::vector<std::string> training_profiles() {
  std::vector<std::string> out;
  for (const auto& p : kProfiles) out.emplace_back(p.name);
  return out;
}

TrainingConfig training_config(std::string_view profile, std::string_view method) {
  const std::size_t m = method_index(method);
  for (const auto& p : kProfiles) {
    if (p.name != profile) continue;
    return {std::string(p.name), std::string(p.model), std::string(kMethods[m]), p.learning_rates[m], p.batch_size,
            p.warmup_steps};
  }
  throw ValidationError(fmt::format("unknown model profile '{}' (expected one of: {})", profile,
                                    fmt::join(training_profiles(), ", ")));
}

OrderedJson to_json(const TrainingConfig& c) {
  return {{"schema", "c2t-training/1"},
          {"profile", c.profile},
          {"model", c.model},
          {"method", c.method},
          {"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size},
          {"warmup_steps", c.warmup_steps},
          {"max_source_length", kMaxSequenceLength},
          {"max_target_length", kMaxSequenceLength},
          {"seeds", {13, 14}},
          {"decode", providers::to_json(providers::DecodeConfig{})},
          {"epoch_selection", {{"split", "dev"}, {"metric", "rouge2"}, {"rule", "max"}, {"ties", "earliest"}}}};
}

}  // namespace c2t::cli
