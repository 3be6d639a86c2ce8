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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "c2t/common/random.hpp"
#include "c2t/common/text.hpp"
#include "c2t/corpus/corpus.hpp"

namespace c2t::testing {

struct SyntheticOptions {
  std::map<std::size_t, std::size_t> sets_by_size;  // concept-set size -> count
  std::size_t sentences = 0;                        // total references; at least one per set
  std::uint64_t seed = 1;
  std::string id_prefix = "syn";
};

inline const std::vector<std::string>& synthetic_vocabulary() {
  static const std::vector<std::string> v = {
      "dog",    "frisbee", "catch",  "park",   "ball",    "throw",   "cat",    "mat",    "sit",   "sun",
      "man",    "horse",   "ride",   "beach",  "wave",    "chef",    "cook",   "pasta",  "kitchen", "knife",
      "skier",  "slope",   "head",   "snow",   "mountain", "boy",    "kite",   "fly",    "wind",  "field",
      "girl",   "guitar",  "play",   "stage",  "crowd",   "woman",   "bike",   "street", "helmet", "road",
      "fisherman", "boat", "net",    "lake",   "fish",    "sheep",   "herd",   "dip",    "wait",  "farm",
      "soldier", "knee",   "patrol", "village", "painting", "wall",  "hang",   "home",   "tree",  "climb",
      "bird",   "nest",    "branch", "sing",   "child",   "sand",    "castle", "build",  "shovel", "bucket"};
  return v;
}

// References mention every concept, some inflected with a plural "s", among
// filler words, in a seeded order.
inline std::string synthetic_sentence(Rng& rng, const std::vector<std::string>& concepts) {
  static const std::vector<std::string> fillers = {"the", "a", "near", "with", "on", "in", "while", "by", "and"};
  std::vector<std::string> order = concepts;
  rng.shuffle(std::span(order));
  std::vector<std::string> words;
  for (const auto& c : order) {
    words.push_back(fillers[rng.below(fillers.size())]);
    std::string w = c;
    if (rng.below(4) == 0 && w.back() != 's' && w.back() != 'h') w += "s";
    words.push_back(w);
  }
  words.push_back(fillers[rng.below(fillers.size())]);
  words.push_back("today");
  std::string s = text::join(words, " ");
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s + ".";
}

inline std::vector<corpus::Example> synthetic_corpus(const SyntheticOptions& o) {
  Rng rng(o.seed);
  const auto& vocab = synthetic_vocabulary();
  std::size_t total_sets = 0;
  for (const auto& [size, n] : o.sets_by_size) total_sets += n;
  // Extra references land on a set with probability proportional to its
  // concept count, so larger sets carry more sentences on average.
  std::vector<std::size_t> refs(total_sets, 1);
  std::vector<std::size_t> owner;
  {
    std::size_t k = 0;
    for (const auto& [size, n] : o.sets_by_size) {
      for (std::size_t i = 0; i < n; ++i, ++k) owner.insert(owner.end(), size, k);
    }
  }
  for (std::size_t extra = o.sentences > total_sets ? o.sentences - total_sets : 0; extra > 0; --extra) {
    ++refs[owner[rng.below(owner.size())]];
  }
  std::vector<corpus::Example> out;
  std::size_t k = 0;
  for (const auto& [size, n] : o.sets_by_size) {
    for (std::size_t i = 0; i < n; ++i, ++k) {
      std::vector<std::string> pool = vocab;
      rng.shuffle(std::span(pool));
      std::vector<std::string> concepts(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
      corpus::Example e;
      e.id = o.id_prefix + "-" + std::to_string(k);
      e.concepts = corpus::ConceptSet::from(concepts);
      for (std::size_t r = 0; r < refs[k]; ++r) e.references.push_back(synthetic_sentence(rng, concepts));
      out.push_back(std::move(e));
    }
  }
  // Interleave sizes so file order carries no structure.
  rng.shuffle(std::span(out));
  return out;
}

// Same shape as the dev_O split: 493 / 250 / 250 sets of size 3 / 4 / 5
// and 4,018 reference sentences.
inline std::vector<corpus::Example> dev_o_shaped_corpus(std::uint64_t seed = 1) {
  return synthetic_corpus({{{3, 493}, {4, 250}, {5, 250}}, 4018, seed, "devO"});
}

}  // namespace c2t::testing
