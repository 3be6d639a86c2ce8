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

#include "c2t/providers/providers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "c2t/common/error.hpp"
#include "c2t/common/text.hpp"
#include "c2t/simd/kernels.hpp"
#include "factories.hpp"

namespace c2t::providers {

void DecodeConfig::validate() const {
  if (beam_size < 1) throw ValidationError("beam_size must be at least 1");
  if (min_len > max_len) throw ValidationError("min_len must not exceed max_len");
  if (max_len < 1) throw ValidationError("max_len must be at least 1");
  if (!std::isfinite(length_penalty)) throw ValidationError("length_penalty must be finite");
}

OrderedJson to_json(const DecodeConfig& c) {
  return {{"beam_size", c.beam_size},
          {"length_penalty", c.length_penalty},
          {"max_len", c.max_len},
          {"min_len", c.min_len},
          {"early_stop", c.early_stop}};
}

DecodeConfig decode_config_from_json(const Json& j) {
  DecodeConfig c;
  if (!j.is_object()) throw ParseError("decode config must be an object");
  try {
    c.beam_size = j.value("beam_size", c.beam_size);
    c.length_penalty = j.value("length_penalty", c.length_penalty);
    c.max_len = j.value("max_len", c.max_len);
    c.min_len = j.value("min_len", c.min_len);
    c.early_stop = j.value("early_stop", c.early_stop);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("decode config: ") + e.what());
  }
  c.validate();
  return c;
}

std::size_t effective_workers(const Provider& p, std::size_t requested) {
  std::size_t w = std::max<std::size_t>(1, requested);
  if (!p.concurrent_safe()) return 1;
  if (p.max_in_flight() > 0) w = std::min(w, p.max_in_flight());
  return w;
}

std::vector<Vector> ContextualEmbedder::embed_batch(std::span<const std::string> texts) const {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed(t));
  return out;
}

std::vector<Attention> AttentionProvider::attend_batch(std::span<const std::string> sentences) const {
  std::vector<Attention> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(attend(s));
  return out;
}

std::vector<double> PerplexityScorer::ppl_batch(std::span<const std::string> texts) const {
  std::vector<double> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(ppl(t));
  return out;
}

std::vector<std::string> MaskInfiller::infill_batch(std::span<const std::string> templates) const {
  std::vector<std::string> out;
  out.reserve(templates.size());
  for (const auto& t : templates) out.push_back(infill(t));
  return out;
}

std::vector<std::string> SequenceGenerator::generate_batch(std::span<const std::string> inputs,
                                                           const DecodeConfig& decode) const {
  std::vector<std::string> out;
  out.reserve(inputs.size());
  for (const auto& i : inputs) out.push_back(generate(i, decode));
  return out;
}

void normalize_attention(Attention& a) {
  const std::size_t n = a.positions();
  if (a.word_of_piece.size() != n) throw ProviderError("attention: piece alignment length differs from piece count");
  for (std::size_t w : a.word_of_piece) {
    if (w >= a.words.size()) throw ProviderError("attention: piece aligned to a word index out of range");
  }
  if (a.heads == 0 || a.weights.size() != a.heads * n * n) {
    throw ProviderError("attention: weight tensor does not have heads x positions x positions entries");
  }
  for (std::size_t h = 0; h < a.heads; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      double* row = a.weights.data() + (h * n + i) * n;
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(row[j] >= 0.0) || !std::isfinite(row[j])) throw ProviderError("attention: negative or non-finite weight");
        sum += row[j];
      }
      if (std::abs(sum - 1.0) >= 1e-4) {
        throw ProviderError("attention: row sum " + std::to_string(sum) + " deviates from 1 by more than 1e-4");
      }
      for (std::size_t j = 0; j < n; ++j) row[j] /= sum;
    }
  }
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw ValidationError("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                          std::to_string(v.size()) + ")");
  }
  const double uu = simd::sum_squares(u);
  const double vv = simd::sum_squares(v);
  if (uu == 0.0 && vv == 0.0) throw ValidationError("cosine: both vectors are zero");
  if (uu == 0.0 || vv == 0.0) return 0.0;
  const double c = simd::dot(u, v) / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

namespace {

using Factory = std::function<std::shared_ptr<Provider>(const Json&)>;

const std::map<std::string, Factory>& registry() {
  static const std::map<std::string, Factory> r = {
      {"stub-embedder", detail::make_stub_embedder},   {"hash-embedder", detail::make_hash_embedder},
      {"stub-attention", detail::make_stub_attention}, {"hash-ppl", detail::make_hash_ppl},
      {"echo-infiller", detail::make_echo_infiller},   {"echo-generator", detail::make_echo_generator},
      {"lookup-generator", detail::make_lookup_generator},
      {"http-embedder", detail::make_http_embedder},   {"http-attention", detail::make_http_attention},
      {"http-ppl", detail::make_http_ppl},             {"http-infiller", detail::make_http_infiller},
      {"http-generator", detail::make_http_generator},
  };
  return r;
}

template <typename T>
std::shared_ptr<T> load_as(const Json& config, std::string_view role) {
  auto p = load_provider(config);
  auto typed = std::dynamic_pointer_cast<T>(p);
  if (!typed) {
    throw RegistryError("provider kind '" + p->kind() + "' cannot serve as " + std::string(role));
  }
  return typed;
}

}  // namespace

std::vector<std::string> known_kinds() {
  std::vector<std::string> out;
  for (const auto& [k, _] : registry()) out.push_back(k);
  return out;
}

std::shared_ptr<Provider> load_provider(const Json& config) {
  if (!config.is_object() || !config.contains("kind") || !config.at("kind").is_string()) {
    throw ParseError("provider config needs a string field \"kind\"");
  }
  const std::string kind = config.at("kind");
  const auto it = registry().find(kind);
  if (it == registry().end()) {
    const auto kinds = known_kinds();
    throw RegistryError("unknown provider kind '" + kind + "'; known kinds: " + text::join(kinds, ", "));
  }
  try {
    return it->second(config);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("provider '" + kind + "' config: " + e.what());
  }
}

std::shared_ptr<ContextualEmbedder> load_embedder(const Json& c) { return load_as<ContextualEmbedder>(c, "an embedder"); }
std::shared_ptr<AttentionProvider> load_attention(const Json& c) {
  return load_as<AttentionProvider>(c, "an attention provider");
}
std::shared_ptr<PerplexityScorer> load_scorer(const Json& c) { return load_as<PerplexityScorer>(c, "a perplexity scorer"); }
std::shared_ptr<MaskInfiller> load_infiller(const Json& c) { return load_as<MaskInfiller>(c, "a mask infiller"); }
std::shared_ptr<SequenceGenerator> load_generator(const Json& c) {
  return load_as<SequenceGenerator>(c, "a sequence generator");
}

}  // namespace c2t::providers
