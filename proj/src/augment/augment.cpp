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

#include "c2t/augment/augment.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "c2t/common/error.hpp"
#include "c2t/common/parallel.hpp"
#include "c2t/common/porter.hpp"
#include "c2t/common/text.hpp"

namespace c2t::augment {
namespace {

std::string example_context(const corpus::Example& e) { return "example '" + e.id + "'"; }

void check_k(std::size_t k) {
  if (k > kMaxAugment) throw ValidationError("augmentation size k must be in 0.." + std::to_string(kMaxAugment));
}

AugmentedExample assemble(const corpus::Example& example, Method method, std::size_t k,
                          std::span<const Candidate> pool, const AugmentOptions& options) {
  AugmentedExample out{example, {}, {}, method, k};
  for (std::size_t i : greedy_select(pool, k, options.rank)) {
    out.added.push_back(pool[i].word);
    out.provenance.push_back({pool[i].reference, pool[i].score});
  }
  return out;
}

}  // namespace

std::string_view method_name(Method m) { return m == Method::kKw ? "kw" : "att"; }

Method method_from_string(std::string_view s) {
  if (s == "kw") return Method::kKw;
  if (s == "att") return Method::kAtt;
  throw ValidationError("unknown augmentation method '" + std::string(s) + "' (expected kw or att)");
}

Rank rank_from_string(std::string_view s) {
  if (s == "best") return Rank::kBest;
  if (s == "worst") return Rank::kWorst;
  throw ValidationError("unknown rank '" + std::string(s) + "' (expected best or worst)");
}

bool matches_concept(const corpus::Example& example, std::string_view word) {
  const std::string lower = text::to_lower(word);
  if (example.concepts.contains(lower)) return true;
  const std::string stem = text::porter_stem(lower);
  return std::any_of(example.concepts.begin(), example.concepts.end(),
                     [&](const std::string& c) { return text::porter_stem(c) == stem; });
}

std::vector<std::string> default_candidates(const corpus::Example& example, const text::WordSet& stopwords) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& ref : example.references) {
    for (const auto& w : text::words(ref)) {
      std::string lower = text::to_lower(w);
      if (!text::is_alpha_word(lower) || stopwords.contains(lower) || seen.contains(lower)) continue;
      seen.insert(lower);
      if (!matches_concept(example, lower)) out.push_back(std::move(lower));
    }
  }
  return out;
}

std::vector<Candidate> kw_candidates(const corpus::Example& example, const providers::ContextualEmbedder& embedder,
                                     const AugmentOptions& options) {
  return with_context(example_context(example), [&] {
    auto words = options.extractor ? options.extractor(example) : default_candidates(example, options.kw_stopwords);
    std::erase_if(words, [&](const std::string& w) { return matches_concept(example, w); });
    std::vector<Candidate> pool;
    if (words.empty()) return pool;

    const auto concept_vecs = embedder.embed_batch(example.concepts.concepts());
    const auto word_vecs = embedder.embed_batch(words);
    if (word_vecs.size() != words.size() || concept_vecs.size() != example.concepts.size()) {
      throw ProviderError("embedder returned the wrong number of vectors");
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      double sum = 0.0;
      for (const auto& cv : concept_vecs) sum += providers::cosine(word_vecs[i], cv);
      const double score = sum / static_cast<double>(concept_vecs.size());
      if (!std::isfinite(score)) throw ProviderError("non-finite similarity for '" + words[i] + "'");
      std::size_t ref = 0;
      for (std::size_t r = 0; r < example.references.size(); ++r) {
        const auto ws = text::words(example.references[r]);
        if (std::any_of(ws.begin(), ws.end(), [&](const std::string& w) { return text::to_lower(w) == words[i]; })) {
          ref = r;
          break;
        }
      }
      pool.push_back({words[i], score, ref});
    }
    return pool;
  });
}

std::vector<Candidate> att_candidates(const corpus::Example& example, const providers::AttentionProvider& attention,
                                      const AugmentOptions& options) {
  return with_context(example_context(example), [&] {
    struct Acc {
      double sum = 0.0;
      std::size_t refs = 0;
      std::size_t first_ref = 0;
    };
    std::unordered_map<std::string, Acc> acc;
    for (std::size_t r = 0; r < example.references.size(); ++r) {
      auto a = attention.attend(example.references[r]);
      providers::normalize_attention(a);
      const std::size_t n = a.positions();
      std::vector<double> received(a.words.size(), 0.0);
      for (std::size_t h = 0; h < a.heads; ++h) {
        for (std::size_t p = 0; p < n; ++p) {
          const std::size_t owner = a.word_of_piece[p];
          for (std::size_t i = 0; i < n; ++i) {
            if (a.word_of_piece[i] != owner) received[owner] += a.at(h, i, p);
          }
        }
      }
      if (options.heads == HeadAggregation::kMean) {
        for (double& v : received) v /= static_cast<double>(a.heads);
      }
      std::map<std::string, double> per_ref;
      for (std::size_t w = 0; w < a.words.size(); ++w) per_ref[text::to_lower(a.words[w])] += received[w];
      for (const auto& [word, score] : per_ref) {
        auto [it, inserted] = acc.try_emplace(word);
        if (inserted) it->second.first_ref = r;
        it->second.sum += score;
        ++it->second.refs;
      }
    }
    std::vector<Candidate> pool;
    for (const auto& [word, a] : acc) {
      if (!text::is_alpha_word(word) || options.att_stopwords.contains(word) || matches_concept(example, word)) continue;
      pool.push_back({word, a.sum / static_cast<double>(a.refs), a.first_ref});
    }
    std::sort(pool.begin(), pool.end(), [](const Candidate& x, const Candidate& y) { return x.word < y.word; });
    return pool;
  });
}

std::vector<std::size_t> greedy_select(std::span<const Candidate> pool, std::size_t k, Rank rank) {
  std::vector<std::size_t> chosen;
  std::vector<bool> used(pool.size(), false);
  for (std::size_t stage = 0; stage < k; ++stage) {
    std::size_t best = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      if (best == pool.size()) {
        best = i;
        continue;
      }
      const double a = pool[i].score, b = pool[best].score;
      const bool better = rank == Rank::kBest ? a > b : a < b;
      if (better || (a == b && pool[i].word < pool[best].word)) best = i;
    }
    if (best == pool.size()) break;
    used[best] = true;
    chosen.push_back(best);
  }
  return chosen;
}

std::string AugmentedExample::model_input() const {
  std::vector<std::string> parts = base.concepts.concepts();
  parts.insert(parts.end(), added.begin(), added.end());
  return text::join(parts, " ");
}

OrderedJson to_json(const AugmentedExample& a) {
  OrderedJson prov = OrderedJson::array();
  for (const auto& p : a.provenance) prov.push_back({{"reference", p.reference}, {"score", p.score}});
  return {{"id", a.base.id},
          {"concepts", a.base.concepts.concepts()},
          {"added", a.added},
          {"method", method_name(a.method)},
          {"k", a.k},
          {"references", a.base.references},
          {"provenance", prov}};
}

AugmentedExample augmented_from_json(const Json& j, std::size_t line) {
  AugmentedExample a;
  a.base = corpus::example_from_json(j, line);
  try {
    a.added = j.at("added").get<std::vector<std::string>>();
    a.method = method_from_string(j.at("method").get<std::string>());
    a.k = j.at("k").get<std::size_t>();
    if (j.contains("provenance")) {
      for (const auto& p : j.at("provenance")) a.provenance.push_back({p.at("reference"), p.at("score")});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("augmented record" + (line ? " (line " + std::to_string(line) + ")" : std::string()) + ": " +
                     e.what());
  }
  if (a.added.size() > a.k) throw ValidationError("augmented record '" + a.base.id + "' adds more than k words");
  return a;
}

AugmentedExample kw_augment(const corpus::Example& example, std::size_t k, const providers::ContextualEmbedder& embedder,
                            const AugmentOptions& options) {
  check_k(k);
  if (k == 0) return {example, {}, {}, Method::kKw, 0};
  const auto pool = kw_candidates(example, embedder, options);
  return assemble(example, Method::kKw, k, pool, options);
}

AugmentedExample att_augment(const corpus::Example& example, std::size_t k,
                             const providers::AttentionProvider& attention, const AugmentOptions& options) {
  check_k(k);
  if (k == 0) return {example, {}, {}, Method::kAtt, 0};
  const auto pool = att_candidates(example, attention, options);
  return assemble(example, Method::kAtt, k, pool, options);
}

AugmentResult augment_split(std::span<const corpus::Example> examples, Method method, std::size_t k,
                            const AugmentProviders& providers, const AugmentOptions& options) {
  check_k(k);
  const providers::Provider* provider = nullptr;
  if (method == Method::kKw) {
    if (providers.embedder == nullptr && k > 0) throw ValidationError("kw augmentation needs an embedder provider");
    provider = providers.embedder;
  } else {
    if (providers.attention == nullptr && k > 0) throw ValidationError("att augmentation needs an attention provider");
    provider = providers.attention;
  }
  const std::size_t workers = provider ? providers::effective_workers(*provider, options.workers) : 1;

  AugmentResult result;
  result.examples.resize(examples.size());
  std::vector<bool> failed(examples.size(), false);
  parallel_for(examples.size(), workers, [&](std::size_t i) {
    try {
      if (k == 0) {
        result.examples[i] = {examples[i], {}, {}, method, 0};
        return;
      }
      result.examples[i] = method == Method::kKw ? kw_augment(examples[i], k, *providers.embedder, options)
                                                 : att_augment(examples[i], k, *providers.attention, options);
    } catch (const Error& e) {
      if (!options.skip_errors) throw;
      spdlog::warn("skipping augmentation: {}", e.what());
      result.examples[i] = {examples[i], {}, {}, method, k};
      failed[i] = true;
    }
  });
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (failed[i]) result.failed_ids.push_back(examples[i].id);
  }
  return result;
}

void write_augmented(const std::filesystem::path& path, std::span<const AugmentedExample> examples) {
  jsonl::Writer w(path);
  for (const auto& a : examples) w.append(to_json(a));
  w.commit();
}

std::vector<AugmentedExample> load_augmented(const std::filesystem::path& path) {
  std::vector<AugmentedExample> out;
  jsonl::for_each(path, [&](const Json& j, std::size_t line) { out.push_back(augmented_from_json(j, line)); });
  return out;
}

}  // namespace c2t::augment
