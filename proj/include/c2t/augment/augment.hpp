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
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c2t/common/jsonl.hpp"
#include "c2t/common/stopwords.hpp"
#include "c2t/corpus/corpus.hpp"
#include "c2t/providers/providers.hpp"

namespace c2t::augment {

inline constexpr std::size_t kMaxAugment = 5;

enum class Method { kKw, kAtt };
enum class Rank { kBest, kWorst };
enum class HeadAggregation { kMean, kSum };

std::string_view method_name(Method m);
Method method_from_string(std::string_view s);
Rank rank_from_string(std::string_view s);

struct Candidate {
  std::string word;            // lowercase
  double score = 0.0;
  std::size_t reference = 0;   // first reference containing the word
};

// Lowercase, deduplicated, in order of first appearance across references.
using CandidateExtractor = std::function<std::vector<std::string>(const corpus::Example&)>;

struct AugmentOptions {
  Rank rank = Rank::kBest;
  // Words never proposed by the default keyword candidate generator.
  text::WordSet kw_stopwords = text::english_stopwords();
  // Words never added by attention ranking. Empty by default: function
  // words such as "at" or "on" can legitimately win.
  text::WordSet att_stopwords;
  HeadAggregation heads = HeadAggregation::kMean;
  CandidateExtractor extractor;  // empty selects default_candidates
  std::size_t workers = 1;
  bool skip_errors = false;
};

// True when `word` equals a concept after lowercasing or after stemming.
bool matches_concept(const corpus::Example& example, std::string_view word);

// Alphabetic, non-stopword reference words that do not match a concept.
std::vector<std::string> default_candidates(const corpus::Example& example, const text::WordSet& stopwords);

// Each candidate scored by the mean cosine between its embedding and the
// embeddings of the original concepts. Provider failures are rethrown with
// the example id prepended.
std::vector<Candidate> kw_candidates(const corpus::Example& example, const providers::ContextualEmbedder& embedder,
                                     const AugmentOptions& options = {});

// Per reference, a word's score is the last-layer attention it receives
// from pieces of other words, summed over its own pieces and aggregated over
// heads; repeated occurrences add up. Scores are then averaged over the
// references containing the word.
std::vector<Candidate> att_candidates(const corpus::Example& example, const providers::AttentionProvider& attention,
                                      const AugmentOptions& options = {});

// Stage-wise greedy choice: each stage takes the remaining candidate with
// the highest score (lowest for Rank::kWorst), ties broken by the
// lexicographically smallest word. Returns indices into `pool`.
std::vector<std::size_t> greedy_select(std::span<const Candidate> pool, std::size_t k, Rank rank = Rank::kBest);

struct Provenance {
  std::size_t reference = 0;
  double score = 0.0;
};

struct AugmentedExample {
  corpus::Example base;
  std::vector<std::string> added;
  std::vector<Provenance> provenance;
  Method method = Method::kKw;
  std::size_t k = 0;

  // Concepts then added words, space separated.
  std::string model_input() const;
};

OrderedJson to_json(const AugmentedExample& a);
AugmentedExample augmented_from_json(const Json& j, std::size_t line = 0);

AugmentedExample kw_augment(const corpus::Example& example, std::size_t k, const providers::ContextualEmbedder& embedder,
                            const AugmentOptions& options = {});
AugmentedExample att_augment(const corpus::Example& example, std::size_t k,
                             const providers::AttentionProvider& attention, const AugmentOptions& options = {});

struct AugmentProviders {
  const providers::ContextualEmbedder* embedder = nullptr;
  const providers::AttentionProvider* attention = nullptr;
};

struct AugmentResult {
  std::vector<AugmentedExample> examples;  // input order
  std::vector<std::string> failed_ids;     // only populated with skip_errors
};

// With skip_errors, a failing example is kept with no added words and its
// id reported; otherwise the first failure (lowest index) is rethrown.
AugmentResult augment_split(std::span<const corpus::Example> examples, Method method, std::size_t k,
                            const AugmentProviders& providers, const AugmentOptions& options = {});

void write_augmented(const std::filesystem::path& path, std::span<const AugmentedExample> examples);
std::vector<AugmentedExample> load_augmented(const std::filesystem::path& path);

}  // namespace c2t::augment
