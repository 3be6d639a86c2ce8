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
#include <string>
#include <string_view>
#include <vector>

#include "c2t/common/jsonl.hpp"

namespace c2t::cli {

struct TrainingConfig {
  std::string profile;
  std::string model;  // hub identifier
  std::string method;
  double learning_rate = 0.0;
  std::size_t batch_size = 0;
  std::size_t warmup_steps = 0;
};

std::vector<std::string> training_profiles();

// Fine-tuning hyperparameters for a model profile (bart-base, bart-large,
// t5-base, t5-large) and a training method (baseline, kw, att, p2t).
// Unknown profiles or methods raise ValidationError listing the valid ones.
TrainingConfig training_config(std::string_view profile, std::string_view method);

// Full trainer document: the hyperparameters above plus sequence limits,
// decode defaults, seeds and the epoch-selection rule.
OrderedJson to_json(const TrainingConfig& c);

}  // namespace c2t::cli
