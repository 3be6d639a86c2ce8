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

#include "c2t/recombine/recombine.hpp"

#include <map>
#include <numeric>

#include "c2t/common/error.hpp"
#include "c2t/common/parallel.hpp"
#include "c2t/common/random.hpp"
#include "c2t/common/text.hpp"

namespace c2t::recombine {
namespace {

constexpr std::string_view kJoiner = " <s> ";

P2TRecord make_record(const keyphrase::RecombinedInput& in, std::uint64_t seed) {
  if (in.elements.empty()) throw ValidationError("recombined input '" + in.id + "' has no elements");
  P2TRecord r;
  r.id = in.id;
  r.seed = seed;
  r.permutation = draw_permutation(in.elements.size(), seed, in.id);
  r.input = with_context("input '" + in.id + "'", [&] { return join_elements(in.elements, r.permutation); });
  return r;
}

}  // namespace

OrderedJson to_json(const P2TRecord& r) {
  OrderedJson j = {{"id", r.id}, {"input", r.input}};
  if (r.target) j["target"] = *r.target;
  j["permutation"] = r.permutation;
  j["seed"] = r.seed;
  return j;
}

P2TRecord p2t_from_json(const Json& j, std::size_t line) {
  P2TRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.input = j.at("input").get<std::string>();
    if (j.contains("target") && !j.at("target").is_null()) r.target = j.at("target").get<std::string>();
    r.permutation = j.value("permutation", std::vector<std::size_t>{});
    r.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("P2T record" + (line ? " (line " + std::to_string(line) + ")" : std::string()) + ": " + e.what());
  }
  return r;
}

std::vector<std::size_t> draw_permutation(std::size_t n, std::uint64_t seed, std::string_view id) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(derive_seed(seed, id));
  rng.shuffle(std::span<std::size_t>(perm));
  return perm;
}

std::string join_elements(std::span<const std::string> elements, std::span<const std::size_t> perm) {
  if (perm.size() != elements.size()) throw ValidationError("permutation length differs from element count");
  std::vector<bool> seen(elements.size(), false);
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const std::size_t k = perm[i];
    if (k >= elements.size() || seen[k]) throw ValidationError("invalid permutation");
    seen[k] = true;
    const auto& e = elements[k];
    if (e.find(kSeparator) != std::string::npos) {
      throw ValidationError("element '" + e + "' contains the reserved separator " + std::string(kSeparator));
    }
    if (text::trim(e).empty()) throw ValidationError("empty element");
    if (i) out += kJoiner;
    out += e;
  }
  return out;
}

std::vector<std::string> split_input(std::string_view input) { return text::split(input, kJoiner); }

std::vector<P2TRecord> build_p2t_train(std::span<const keyphrase::RecombinedInput> recombined,
                                       std::span<const corpus::Example> examples, std::uint64_t seed) {
  std::map<std::string, const corpus::Example*> by_id;
  for (const auto& e : examples) by_id.emplace(e.id, &e);
  if (recombined.size() != examples.size()) {
    throw ValidationError("recombined inputs (" + std::to_string(recombined.size()) + ") and examples (" +
                          std::to_string(examples.size()) + ") are not aligned");
  }
  std::vector<P2TRecord> out;
  for (const auto& in : recombined) {
    const auto it = by_id.find(in.id);
    if (it == by_id.end()) throw ValidationError("recombined input '" + in.id + "' has no matching example");
    const auto base = make_record(in, seed);
    if (it->second->references.empty()) throw ValidationError("example '" + in.id + "' has no references");
    for (const auto& ref : it->second->references) {
      P2TRecord r = base;
      r.target = ref;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<P2TRecord> build_p2t_infer(std::span<const keyphrase::RecombinedInput> recombined, std::uint64_t seed) {
  std::vector<P2TRecord> out;
  out.reserve(recombined.size());
  for (const auto& in : recombined) out.push_back(make_record(in, seed));
  return out;
}

std::vector<corpus::Generation> p2t_generate(std::span<const P2TRecord> records,
                                             const providers::SequenceGenerator& generator,
                                             const providers::DecodeConfig& decode, std::size_t workers) {
  decode.validate();
  std::vector<corpus::Generation> out(records.size());
  parallel_for(records.size(), providers::effective_workers(generator, workers), [&](std::size_t i) {
    out[i] = {records[i].id,
              with_context("record '" + records[i].id + "'", [&] { return generator.generate(records[i].input, decode); })};
  });
  return out;
}

void write_p2t(const std::filesystem::path& path, std::span<const P2TRecord> records) {
  jsonl::Writer w(path);
  for (const auto& r : records) w.append(to_json(r));
  w.commit();
}

std::vector<P2TRecord> load_p2t(const std::filesystem::path& path) {
  std::vector<P2TRecord> out;
  jsonl::for_each(path, [&](const Json& j, std::size_t line) { out.push_back(p2t_from_json(j, line)); });
  return out;
}

}  // namespace c2t::recombine
