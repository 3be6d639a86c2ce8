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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c2t/corpus/corpus.hpp"

namespace c2t::evaluation {

enum class MatchMode {
  kStem,   // lowercase + Porter stem equality (default)
  kExact,  // lowercase equality, for ablation
};

// Lowercases, drops a possessive "'s" / trailing apostrophe, then stems
// when mode is kStem.
std::string normalize_token(std::string_view token, MatchMode mode = MatchMode::kStem);

// covered[i] is true when concept i matches some word of `text` under the
// normalization above.
std::vector<bool> covered_concepts(std::span<const std::string> concepts, std::string_view text,
                                   MatchMode mode = MatchMode::kStem);

// Percentage of concepts covered by `text`, in [0, 100]. Empty text is 0.
double coverage(std::span<const std::string> concepts, std::string_view text,
                MatchMode mode = MatchMode::kStem);

inline double coverage(const corpus::ConceptSet& concepts, std::string_view text,
                       MatchMode mode = MatchMode::kStem) {
  return coverage(concepts.concepts(), text, mode);
}

}  // namespace c2t::evaluation
