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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c2t/common/jsonl.hpp"
#include "c2t/keyphrase/keyphrase.hpp"
#include "c2t/providers/providers.hpp"

namespace c2t::infill {

using Permutation = std::vector<std::size_t>;

struct InfillConfig {
  std::size_t max_perms = 120;
  std::size_t keep_top = 10;
  std::uint64_t enumeration_seed = 13;
  bool postprocess = false;
  std::size_t workers = 1;

  void validate() const;
};

InfillConfig infill_config_from_json(const Json& j);
OrderedJson to_json(const InfillConfig& c);

// "<mask> e1 <mask> e2 ... en <mask>".
std::string render_template(std::span<const std::string> elements);

// All n! permutations in lexicographic order when n! <= max_perms;
// otherwise max_perms distinct permutations drawn by seeded Fisher-Yates
// shuffles, in draw order.
std::vector<Permutation> enumerate_permutations(std::size_t n, std::size_t max_perms, std::uint64_t seed);

// True when n! <= max_perms.
bool enumerates_exhaustively(std::size_t n, std::size_t max_perms);

struct InfillCandidate {
  Permutation permutation;
  double prompt_ppl = 0.0;
  std::optional<std::string> output;
  std::optional<double> output_ppl;
};

// Scores the space-joined permuted elements and keeps the keep_top lowest,
// ties broken by lexicographic permutation order. Permutations whose
// scoring fails are dropped with a warning; if all fail, ProviderError.
std::vector<InfillCandidate> rank_permutations(std::span<const std::string> elements,
                                               std::span<const Permutation> permutations,
                                               const providers::PerplexityScorer& scorer, const InfillConfig& config);

// Strips URLs, bracketed news-agency tags and everything from "pic.twitter"
// on, then collapses whitespace. Idempotent.
std::string postprocess(std::string_view text);

struct InfillOutcome {
  std::vector<InfillCandidate> candidates;  // input order, outputs filled where successful
  std::size_t best = 0;                     // index of the lowest output_ppl, earliest on ties
};

// Infills each candidate's template, post-processes when enabled, then
// scores the output. Failing candidates keep no output; if every candidate
// fails, ProviderError.
InfillOutcome infill(std::span<const std::string> elements, std::span<const InfillCandidate> candidates,
                     const providers::MaskInfiller& infiller, const providers::PerplexityScorer& scorer,
                     const InfillConfig& config);

struct MiRecord {
  std::string id;
  std::string best;
  double best_ppl = 0.0;
  std::vector<InfillCandidate> candidates;
  std::uint64_t seed = 0;
  bool exhaustive = true;
};

OrderedJson to_json(const MiRecord& r);
MiRecord mi_from_json(const Json& j, std::size_t line = 0);

// enumerate -> rank -> infill for one input. The sampling seed is derived
// from (enumeration_seed, id).
MiRecord run_mi(const keyphrase::RecombinedInput& input, const providers::MaskInfiller& infiller,
                const providers::PerplexityScorer& scorer, const InfillConfig& config);

// Output order follows `inputs`. Errors name the failing id.
std::vector<MiRecord> run_mi_split(std::span<const keyphrase::RecombinedInput> inputs,
                                   const providers::MaskInfiller& infiller, const providers::PerplexityScorer& scorer,
                                   const InfillConfig& config);

void write_mi(const std::filesystem::path& path, std::span<const MiRecord> records);
std::vector<MiRecord> load_mi(const std::filesystem::path& path);

}  // namespace c2t::infill
