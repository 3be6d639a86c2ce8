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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c2t/common/jsonl.hpp"

namespace c2t::providers {

using Vector = std::vector<double>;

inline constexpr std::string_view kMaskToken = "<mask>";

struct DecodeConfig {
  std::size_t beam_size = 5;
  double length_penalty = 0.6;
  std::size_t max_len = 32;
  std::size_t min_len = 1;
  bool early_stop = true;

  void validate() const;
  friend bool operator==(const DecodeConfig&, const DecodeConfig&) = default;
};

OrderedJson to_json(const DecodeConfig& c);
DecodeConfig decode_config_from_json(const Json& j);

// Common base: identity for manifests and the concurrency contract the
// harness honours.
class Provider {
 public:
  explicit Provider(Json config) : config_(std::move(config)) {}
  virtual ~Provider() = default;

  std::string kind() const { return config_.value("kind", std::string()); }
  // The config this instance was built from, endpoint overrides applied.
  const Json& config() const { return config_; }

  virtual bool concurrent_safe() const { return true; }
  // 0 means unbounded.
  virtual std::size_t max_in_flight() const { return 0; }

 protected:
  Json config_;
};

// Worker count that respects the provider's concurrency contract.
std::size_t effective_workers(const Provider& p, std::size_t requested);

class ContextualEmbedder : public Provider {
 public:
  using Provider::Provider;
  virtual std::size_t dimension() const = 0;
  virtual Vector embed(std::string_view text) const = 0;
  virtual std::vector<Vector> embed_batch(std::span<const std::string> texts) const;
};

// Last-layer self-attention over word pieces. weights is heads x n x n,
// row-major, where n = pieces.size(); row i holds the attention paid by
// piece i. word_of_piece maps each piece to an index into words.
struct Attention {
  std::vector<std::string> words;
  std::vector<std::string> pieces;
  std::vector<std::size_t> word_of_piece;
  std::size_t heads = 0;
  std::vector<double> weights;

  std::size_t positions() const { return pieces.size(); }
  double at(std::size_t head, std::size_t from, std::size_t to) const {
    const std::size_t n = positions();
    return weights[(head * n + from) * n + to];
  }
};

// Checks shapes and row sums. Rows within 1e-4 of summing to one are
// rescaled exactly; anything else raises ProviderError.
void normalize_attention(Attention& a);

class AttentionProvider : public Provider {
 public:
  using Provider::Provider;
  virtual Attention attend(std::string_view sentence) const = 0;
  virtual std::vector<Attention> attend_batch(std::span<const std::string> sentences) const;
};

class PerplexityScorer : public Provider {
 public:
  using Provider::Provider;
  virtual double ppl(std::string_view text) const = 0;
  virtual std::vector<double> ppl_batch(std::span<const std::string> texts) const;
};

class MaskInfiller : public Provider {
 public:
  using Provider::Provider;
  virtual std::string infill(std::string_view masked_template) const = 0;
  virtual std::vector<std::string> infill_batch(std::span<const std::string> templates) const;
};

class SequenceGenerator : public Provider {
 public:
  using Provider::Provider;
  virtual std::string generate(std::string_view input, const DecodeConfig& decode) const = 0;
  virtual std::vector<std::string> generate_batch(std::span<const std::string> inputs,
                                                  const DecodeConfig& decode) const;
};

// Cosine similarity in [-1, 1]. Throws ValidationError on a dimension
// mismatch or when both vectors are zero; one zero vector gives 0.
double cosine(std::span<const double> u, std::span<const double> v);

// Builds a provider from {"kind": ..., ...}. Unknown kinds raise
// RegistryError listing the registered kinds.
std::shared_ptr<Provider> load_provider(const Json& config);
std::vector<std::string> known_kinds();

// load_provider plus a role check; a kind that does not implement the
// requested interface raises RegistryError.
std::shared_ptr<ContextualEmbedder> load_embedder(const Json& config);
std::shared_ptr<AttentionProvider> load_attention(const Json& config);
std::shared_ptr<PerplexityScorer> load_scorer(const Json& config);
std::shared_ptr<MaskInfiller> load_infiller(const Json& config);
std::shared_ptr<SequenceGenerator> load_generator(const Json& config);

}  // namespace c2t::providers
