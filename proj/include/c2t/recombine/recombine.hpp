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
#include "c2t/corpus/corpus.hpp"
#include "c2t/keyphrase/keyphrase.hpp"
#include "c2t/providers/providers.hpp"

namespace c2t::recombine {

inline constexpr std::string_view kSeparator = "<s>";

struct P2TRecord {
  std::string id;
  std::string input;                  // permuted elements joined by " <s> "
  std::optional<std::string> target;  // absent at inference
  std::vector<std::size_t> permutation;
  std::uint64_t seed = 0;

  friend bool operator==(const P2TRecord&, const P2TRecord&) = default;
};

OrderedJson to_json(const P2TRecord& r);
P2TRecord p2t_from_json(const Json& j, std::size_t line = 0);

// The single permutation used for input `id`: a seeded Fisher-Yates shuffle
// of 0..n-1 keyed on (seed, id), so it does not depend on dataset order.
std::vector<std::size_t> draw_permutation(std::size_t n, std::uint64_t seed, std::string_view id);

// Joins elements[perm[i]] with " <s> ". Elements containing the separator
// raise ValidationError.
std::string join_elements(std::span<const std::string> elements, std::span<const std::size_t> perm);
std::vector<std::string> split_input(std::string_view input);

// One record per (input, reference) pair, all references of an input
// sharing one permutation. Every input needs a matching example id and
// vice versa; otherwise ValidationError.
std::vector<P2TRecord> build_p2t_train(std::span<const keyphrase::RecombinedInput> recombined,
                                       std::span<const corpus::Example> examples, std::uint64_t seed);

// One record per input, no target.
std::vector<P2TRecord> build_p2t_infer(std::span<const keyphrase::RecombinedInput> recombined, std::uint64_t seed);

// Outputs are aligned with `records`. Generator failures are rethrown with
// the record id.
std::vector<corpus::Generation> p2t_generate(std::span<const P2TRecord> records,
                                             const providers::SequenceGenerator& generator,
                                             const providers::DecodeConfig& decode = {}, std::size_t workers = 1);

void write_p2t(const std::filesystem::path& path, std::span<const P2TRecord> records);
std::vector<P2TRecord> load_p2t(const std::filesystem::path& path);

}  // namespace c2t::recombine
