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

namespace c2t::evaluation {

// Lowercased word tokens with punctuation removed. Every reference-based
// metric below sees text through this tokenizer.
std::vector<std::string> metric_tokens(std::string_view text);

// A candidate paired with its references, already tokenized.
struct TokenizedPair {
  std::vector<std::string> candidate;
  std::vector<std::vector<std::string>> references;
};

std::vector<TokenizedPair> tokenize_pairs(std::span<const std::string> candidates,
                                          std::span<const std::vector<std::string>> references);

// Corpus-level BLEU-max_n on the 0..100 scale: clipped n-gram precisions
// summed over the corpus, uniform geometric mean, brevity penalty against
// the closest reference length (shorter wins ties). Any zero precision
// gives 0. Throws ValidationError on an empty corpus or max_n outside 1..4.
double bleu(std::span<const TokenizedPair> corpus, int max_n);

// Sentence-level BLEU with add-one smoothing on orders >= 2, used where a
// per-example value is needed (correlations, paired tests).
double sentence_bleu(const TokenizedPair& pair, int max_n);

enum class RougeVariant { k1, k2, kL };

// F1 of ROUGE-1/2 n-gram overlap or ROUGE-L longest common subsequence,
// maximised over references, on the 0..100 scale.
double rouge(const TokenizedPair& pair, RougeVariant variant);

// CIDEr-D per example: tf-idf n-gram vectors (n = 1..4) with document
// frequencies taken over the references of the whole corpus, clipped
// cosine, Gaussian length penalty (sigma = 6) and the conventional x10,
// then a further x10 to match the published leaderboard scale. Throws
// ValidationError for a corpus of fewer than two examples, where idf is
// identically zero.
std::vector<double> cider(std::span<const TokenizedPair> corpus);

}  // namespace c2t::evaluation
