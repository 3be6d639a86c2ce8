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

#include "c2t/evaluation/coverage.hpp"

#include <unordered_set>

#include "c2t/common/error.hpp"
#include "c2t/common/porter.hpp"
#include "c2t/common/text.hpp"

namespace c2t::evaluation {

std::string normalize_token(std::string_view token, MatchMode mode) {
  std::string w = text::to_lower(token);
  if (w.size() > 2 && w.ends_with("'s")) {
    w.resize(w.size() - 2);
  } else if (w.size() > 1 && w.back() == '\'') {
    w.pop_back();
  }
  return mode == MatchMode::kStem ? text::porter_stem(w) : w;
}

std::vector<bool> covered_concepts(std::span<const std::string> concepts, std::string_view text,
                                   MatchMode mode) {
  std::unordered_set<std::string> forms;
  for (const auto& w : text::words(text)) forms.insert(normalize_token(w, mode));
  std::vector<bool> out;
  out.reserve(concepts.size());
  for (const auto& c : concepts) out.push_back(forms.contains(normalize_token(c, mode)));
  return out;
}

double coverage(std::span<const std::string> concepts, std::string_view text, MatchMode mode) {
  if (concepts.empty()) throw ValidationError("coverage needs a non-empty concept set");
  std::size_t hit = 0;
  for (bool b : covered_concepts(concepts, text, mode)) hit += b ? 1 : 0;
  return 100.0 * static_cast<double>(hit) / static_cast<double>(concepts.size());
}

}  // namespace c2t::evaluation
