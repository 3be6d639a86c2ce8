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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "c2t/common/jsonl.hpp"

namespace c2t::corpus {

inline constexpr std::size_t kMinConcepts = 1;
inline constexpr std::size_t kMaxConcepts = 16;

// Ordered, duplicate-free list of lowercase concept tokens.
class ConceptSet {
 public:
  ConceptSet() = default;

  // Lowercases each concept and validates the invariants. Throws
  // ValidationError on empty/whitespace-bearing tokens, duplicates, or a
  // size outside [kMinConcepts, kMaxConcepts].
  static ConceptSet from(std::vector<std::string> concepts);

  const std::vector<std::string>& concepts() const { return concepts_; }
  std::size_t size() const { return concepts_.size(); }
  bool contains(std::string_view word) const;

  auto begin() const { return concepts_.begin(); }
  auto end() const { return concepts_.end(); }

  friend bool operator==(const ConceptSet&, const ConceptSet&) = default;

 private:
  std::vector<std::string> concepts_;
};

struct Example {
  std::string id;
  ConceptSet concepts;
  std::vector<std::string> references;

  friend bool operator==(const Example&, const Example&) = default;
};

OrderedJson to_json(const Example& e);

// Parses one JSONL record {"id", "concepts", "references"}. `line` is only
// used in error messages.
Example example_from_json(const Json& j, std::size_t line = 0);

// Reads a corpus file. Malformed lines raise ParseError naming the line;
// duplicate ids raise ValidationError. Concepts that change under
// lowercasing are logged as a warning.
std::vector<Example> load_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, std::span<const Example> examples);

// One system output for one example.
struct Generation {
  std::string id;
  std::string text;

  friend bool operator==(const Generation&, const Generation&) = default;
};

// Reads {"id", <field>} records; `field` is "output" for generator files and
// "best" for mask-infilling files. Duplicate ids raise ValidationError.
std::vector<Generation> load_generations(const std::filesystem::path& path, const std::string& field = "output");
void write_generations(const std::filesystem::path& path, std::span<const Generation> generations);

struct SplitSpec {
  std::string name;                        // train_CG, dev_CG, test_CG, dev_O or test_O
  std::map<std::size_t, std::size_t> counts;  // concept-set size -> number of sets
  std::optional<std::size_t> sentences;    // optional exact reference-sentence total
  std::uint64_t seed = 13;

  std::size_t total() const;
};

SplitSpec split_spec_from_json(const Json& j);
OrderedJson to_json(const SplitSpec& s);

// Size and sentence targets for carving dev_O into dev_CG and test_CG.
SplitSpec default_dev_spec();
SplitSpec default_test_spec();

struct Splits {
  std::vector<Example> dev;
  std::vector<Example> test;
};

// Seeded stratified sampling without replacement (seed taken from
// spec_dev). When a spec carries a sentence target, a deterministic
// same-size swap search adjusts membership until the reference total
// matches. Outputs keep the input order of `pool`.
Splits build_splits(std::span<const Example> pool, const SplitSpec& spec_dev, const SplitSpec& spec_test);

struct SplitStats {
  std::map<std::size_t, std::size_t> by_size;
  std::size_t total_sets = 0;
  std::size_t total_sentences = 0;

  friend bool operator==(const SplitStats&, const SplitStats&) = default;
};

SplitStats split_stats(std::span<const Example> examples);
OrderedJson to_json(const SplitStats& s);

}  // namespace c2t::corpus
