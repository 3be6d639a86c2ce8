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
#include <span>
#include <string>
#include <vector>

#include "c2t/common/stopwords.hpp"
#include "c2t/common/text.hpp"

namespace c2t::keyphrase {

// Half-open token range [begin, end) into the tokenize() output, counting
// punctuation tokens.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool overlaps(const Span& o) const { return begin < o.end && o.begin < end; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct ScoredCandidate {
  std::vector<std::string> tokens;  // surface form of the first occurrence
  std::string key;                  // lowercase tokens joined by a single space
  Span span;                        // first occurrence
  std::size_t tf = 0;
  double score = 0.0;               // lower is more salient
};

struct ScoringOptions {
  std::size_t max_n = 3;
  const text::WordSet* stopwords = nullptr;  // null selects english_stopwords()
};

// Unsupervised statistical n-gram scoring with a co-occurrence window of one
// word. Only valid candidates are returned: no numeric or unparsable words,
// and neither boundary word is a stopword. The result is sorted by ascending
// score; equal scores keep first-generation order (by end position, then by
// length).
std::vector<ScoredCandidate> score_candidates(std::span<const text::Token> tokens,
                                              const ScoringOptions& options);

// Normalized Levenshtein similarity, 1 - distance / max(len), on bytes.
// Two empty strings are identical.
double levenshtein_similarity(std::string_view a, std::string_view b);

}  // namespace c2t::keyphrase
