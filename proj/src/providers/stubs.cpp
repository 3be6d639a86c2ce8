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

#include <cmath>
#include <map>
#include <unordered_map>

#include "c2t/common/error.hpp"
#include "c2t/common/random.hpp"
#include "c2t/common/text.hpp"
#include "factories.hpp"

namespace c2t::providers::detail {
namespace {

Vector hash_vector(std::string_view text, std::uint64_t seed, std::size_t dim) {
  const std::uint64_t base = derive_seed(seed, text::to_lower(text));
  Vector v(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    v[k] = static_cast<double>(splitmix64(base + k) >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
  return v;
}

class HashEmbedder final : public ContextualEmbedder {
 public:
  explicit HashEmbedder(const Json& c)
      : ContextualEmbedder(c), dim_(c.value("dim", std::size_t{16})), seed_(c.value("seed", std::uint64_t{0})) {
    if (dim_ == 0) throw ValidationError("hash-embedder: dim must be positive");
  }
  std::size_t dimension() const override { return dim_; }
  Vector embed(std::string_view text) const override { return hash_vector(text, seed_, dim_); }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// Fixed word -> vector table; lookups try the exact key, then lowercase.
class StubEmbedder final : public ContextualEmbedder {
 public:
  explicit StubEmbedder(const Json& c) : ContextualEmbedder(c), seed_(c.value("seed", std::uint64_t{0})) {
    for (const auto& [word, vec] : c.at("table").items()) {
      auto v = vec.get<Vector>();
      if (v.empty()) throw ValidationError("stub-embedder: empty vector for '" + word + "'");
      if (dim_ == 0) dim_ = v.size();
      if (v.size() != dim_) throw ValidationError("stub-embedder: vectors have different dimensions");
      table_.emplace(word, std::move(v));
    }
    if (table_.empty()) throw ValidationError("stub-embedder: table is empty");
    const std::string fallback = c.value("fallback", std::string("error"));
    if (fallback != "error" && fallback != "hash") throw ValidationError("stub-embedder: fallback must be error or hash");
    hash_fallback_ = fallback == "hash";
  }
  std::size_t dimension() const override { return dim_; }
  Vector embed(std::string_view text) const override {
    if (auto it = table_.find(std::string(text)); it != table_.end()) return it->second;
    if (auto it = table_.find(text::to_lower(text)); it != table_.end()) return it->second;
    if (hash_fallback_) return hash_vector(text, seed_, dim_);
    throw ProviderError("stub-embedder has no vector for '" + std::string(text) + "'");
  }

 private:
  std::unordered_map<std::string, Vector> table_;
  std::size_t dim_ = 0;
  std::uint64_t seed_;
  bool hash_fallback_ = false;
};

// Every query row attends to piece j in proportion to the weight of the
// word owning j divided by that word's piece count, so summing a word's
// pieces recovers the word's share regardless of splitting.
class StubAttention final : public AttentionProvider {
 public:
  explicit StubAttention(const Json& c)
      : AttentionProvider(c),
        default_weight_(c.value("default_weight", 1.0)),
        heads_(c.value("heads", std::size_t{1})),
        split_long_(c.value("split_long", std::size_t{0})) {
    if (c.contains("weights")) {
      for (const auto& [w, v] : c.at("weights").items()) weights_[text::to_lower(w)] = v.get<double>();
    }
    if (heads_ == 0) throw ValidationError("stub-attention: heads must be positive");
    if (!(default_weight_ > 0.0)) throw ValidationError("stub-attention: default_weight must be positive");
    for (const auto& [w, v] : weights_) {
      if (!(v > 0.0)) throw ValidationError("stub-attention: weight for '" + w + "' must be positive");
    }
  }

  Attention attend(std::string_view sentence) const override {
    Attention a;
    a.words = text::words(sentence);
    if (a.words.empty()) throw ProviderError("stub-attention: sentence has no words");
    std::vector<double> piece_weight;
    for (std::size_t w = 0; w < a.words.size(); ++w) {
      const auto& word = a.words[w];
      std::vector<std::string> pieces;
      if (split_long_ > 0 && word.size() > split_long_) {
        for (std::size_t at = 0; at < word.size(); at += split_long_) {
          pieces.push_back((at ? "##" : "") + word.substr(at, split_long_));
        }
      } else {
        pieces.push_back(word);
      }
      const auto it = weights_.find(text::to_lower(word));
      const double weight = it == weights_.end() ? default_weight_ : it->second;
      for (auto& p : pieces) {
        a.pieces.push_back(std::move(p));
        a.word_of_piece.push_back(w);
        piece_weight.push_back(weight / static_cast<double>(pieces.size()));
      }
    }
    double total = 0.0;
    for (double w : piece_weight) total += w;
    const std::size_t n = a.pieces.size();
    a.heads = heads_;
    a.weights.resize(heads_ * n * n);
    for (std::size_t h = 0; h < heads_; ++h) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a.weights[(h * n + i) * n + j] = piece_weight[j] / total;
      }
    }
    return a;
  }

 private:
  std::unordered_map<std::string, double> weights_;
  double default_weight_;
  std::size_t heads_;
  std::size_t split_long_;
};

class HashPpl final : public PerplexityScorer {
 public:
  explicit HashPpl(const Json& c) : PerplexityScorer(c), seed_(c.value("seed", std::uint64_t{0})) {
    if (c.contains("table")) {
      for (const auto& [t, v] : c.at("table").items()) {
        const double p = v.get<double>();
        if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("hash-ppl: table values must be positive");
        table_.emplace(t, p);
      }
    }
  }
  // 1 + (h mod 10^6) / 10^6 * 99 with h a seeded 64-bit hash of the text.
  double ppl(std::string_view text) const override {
    if (auto it = table_.find(std::string(text)); it != table_.end()) return it->second;
    const std::uint64_t h = derive_seed(seed_, text);
    return 1.0 + static_cast<double>(h % 1000000) / 1e6 * 99.0;
  }

 private:
  std::uint64_t seed_;
  std::unordered_map<std::string, double> table_;
};

// Replaces every mask with `fill` (cycling through a list when given).
class EchoInfiller final : public MaskInfiller {
 public:
  explicit EchoInfiller(const Json& c) : MaskInfiller(c) {
    if (c.contains("fill")) {
      const auto& f = c.at("fill");
      fills_ = f.is_array() ? f.get<std::vector<std::string>>() : std::vector<std::string>{f.get<std::string>()};
    }
  }
  std::string infill(std::string_view tmpl) const override {
    std::string out;
    std::size_t start = 0;
    std::size_t k = 0;
    while (true) {
      const auto pos = tmpl.find(kMaskToken, start);
      out.append(tmpl.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
      if (pos == std::string_view::npos) break;
      if (!fills_.empty()) out += " " + fills_[k++ % fills_.size()] + " ";
      start = pos + kMaskToken.size();
    }
    out = text::collapse_whitespace(out);
    if (out.empty()) throw ProviderError("echo-infiller: template has no content besides masks");
    return out;
  }

 private:
  std::vector<std::string> fills_;
};

std::string echo_tokens(std::string_view input, const DecodeConfig& d) {
  d.validate();
  std::vector<std::string> toks;
  for (auto& t : text::split(text::collapse_whitespace(input), " ")) {
    if (!t.empty() && t != "<s>") toks.push_back(std::move(t));
  }
  if (toks.empty()) throw ProviderError("echo-generator: input has no tokens");
  if (toks.size() > d.max_len) toks.resize(d.max_len);
  for (std::size_t i = 0; toks.size() < d.min_len; ++i) toks.push_back(toks[i]);
  return text::join(toks, " ");
}

// Input tokens minus "<s>" separators, cut to max_len and padded to min_len
// by cycling.
class EchoGenerator final : public SequenceGenerator {
 public:
  using SequenceGenerator::SequenceGenerator;
  std::string generate(std::string_view input, const DecodeConfig& d) const override { return echo_tokens(input, d); }
};

class LookupGenerator final : public SequenceGenerator {
 public:
  explicit LookupGenerator(const Json& c) : SequenceGenerator(c) {
    for (const auto& [in, out] : c.at("table").items()) table_.emplace(in, out.get<std::string>());
    const std::string fb = c.value("fallback", std::string("error"));
    if (fb != "error" && fb != "echo") throw ValidationError("lookup-generator: fallback must be error or echo");
    echo_fallback_ = fb == "echo";
  }
  std::string generate(std::string_view input, const DecodeConfig& d) const override {
    if (auto it = table_.find(std::string(input)); it != table_.end()) return it->second;
    if (echo_fallback_) return echo_tokens(input, d);
    throw ProviderError("lookup-generator has no output for '" + std::string(input) + "'");
  }

 private:
  std::unordered_map<std::string, std::string> table_;
  bool echo_fallback_ = false;
};

}  // namespace

std::shared_ptr<Provider> make_stub_embedder(const Json& c) { return std::make_shared<StubEmbedder>(c); }
std::shared_ptr<Provider> make_hash_embedder(const Json& c) { return std::make_shared<HashEmbedder>(c); }
std::shared_ptr<Provider> make_stub_attention(const Json& c) { return std::make_shared<StubAttention>(c); }
std::shared_ptr<Provider> make_hash_ppl(const Json& c) { return std::make_shared<HashPpl>(c); }
std::shared_ptr<Provider> make_echo_infiller(const Json& c) { return std::make_shared<EchoInfiller>(c); }
std::shared_ptr<Provider> make_echo_generator(const Json& c) { return std::make_shared<EchoGenerator>(c); }
std::shared_ptr<Provider> make_lookup_generator(const Json& c) { return std::make_shared<LookupGenerator>(c); }

}  // namespace c2t::providers::detail
