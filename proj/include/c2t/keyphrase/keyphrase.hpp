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
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "c2t/common/jsonl.hpp"
#include "c2t/common/stopwords.hpp"
#include "c2t/corpus/corpus.hpp"
#include "c2t/keyphrase/yake.hpp"

namespace c2t::keyphrase {

struct Keyphrase {
  std::vector<std::string> tokens;
  Span span;
  double score = 0.0;

  std::string text() const;
};

struct ExtractionConfig {
  std::size_t max_n = 3;            // >= 2
  std::size_t max_phrases = 5;      // >= 1
  double dedup_threshold = 0.9;     // in (0, 1]; similarity >= threshold discards
  text::WordSet stopwords = text::english_stopwords();
  std::uint64_t seed = 13;          // recorded in manifests; extraction itself is deterministic

  void validate() const;
};

ExtractionConfig extraction_config_from_json(const Json& j);
OrderedJson to_json(const ExtractionConfig& c);

// Multi-word keyphrases of `text` in ascending score order. A candidate is
// kept only if its span is disjoint from every kept span and its similarity
// to every kept phrase is below the dedup threshold. Single words are never
// returned. Fewer than two words yields an empty list.
std::vector<Keyphrase> extract_keyphrases(std::string_view text, const ExtractionConfig& config);

enum class Origin { kReference, kBaselineGeneration };

std::string_view origin_name(Origin o);
Origin origin_from_string(std::string_view s);

struct RecombinedInput {
  std::string id;
  std::vector<std::string> elements;
  Origin origin = Origin::kReference;

  friend bool operator==(const RecombinedInput&, const RecombinedInput&) = default;
};

OrderedJson to_json(const RecombinedInput& r);
RecombinedInput recombined_from_json(const Json& j, std::size_t line = 0);

// Keyphrases of `source` followed by every concept they leave uncovered
// (stem match), in concept order. An empty source or an empty extraction
// falls back to the concepts themselves.
RecombinedInput build_recombined_input(const corpus::Example& example, std::string_view source, Origin origin,
                                       const ExtractionConfig& config);

// Output follows the order of `examples`. An example without a source text
// raises LookupError naming its id.
std::vector<RecombinedInput> build_recombined_split(std::span<const corpus::Example> examples,
                                                    const std::map<std::string, std::string>& sources, Origin origin,
                                                    const ExtractionConfig& config, std::size_t workers = 1);

std::vector<RecombinedInput> load_recombined(const std::filesystem::path& path);
void write_recombined(const std::filesystem::path& path, std::span<const RecombinedInput> inputs);

}  // namespace c2t::keyphrase
