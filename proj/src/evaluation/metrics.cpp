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

#include "c2t/evaluation/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "c2t/common/error.hpp"
#include "c2t/common/text.hpp"

namespace c2t::evaluation {
namespace {

constexpr int kCiderOrder = 4;
constexpr double kCiderSigma = 6.0;

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts ngrams(std::span<const std::string> tokens, int n) {
  NgramCounts out;
  const auto len = static_cast<int>(tokens.size());
  for (int i = 0; i + n <= len; ++i) {
    ++out[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return out;
}

int total(const NgramCounts& c) {
  int t = 0;
  for (const auto& [_, k] : c) t += k;
  return t;
}

// Clipped matches of a candidate against the per-ngram maximum over references.
int clipped_matches(const NgramCounts& cand, std::span<const NgramCounts> refs) {
  int m = 0;
  for (const auto& [g, k] : cand) {
    int best = 0;
    for (const auto& r : refs) {
      if (auto it = r.find(g); it != r.end()) best = std::max(best, it->second);
    }
    m += std::min(k, best);
  }
  return m;
}

std::size_t closest_ref_length(const TokenizedPair& p) {
  std::size_t best = 0;
  std::size_t best_diff = SIZE_MAX;
  const auto c = p.candidate.size();
  for (const auto& r : p.references) {
    const auto diff = r.size() > c ? r.size() - c : c - r.size();
    if (diff < best_diff || (diff == best_diff && r.size() < best)) {
      best = r.size();
      best_diff = diff;
    }
  }
  return best;
}

double brevity_penalty(double cand_len, double ref_len) {
  if (cand_len >= ref_len) return 1.0;
  if (cand_len == 0.0) return 0.0;
  return std::exp(1.0 - ref_len / cand_len);
}

void check_order(int max_n) {
  if (max_n < 1 || max_n > 4) throw ValidationError("BLEU order must be in 1..4, got " + std::to_string(max_n));
}

double f1(int overlap, int cand_total, int ref_total) {
  const double p = static_cast<double>(overlap) / std::max(cand_total, 1);
  const double r = static_cast<double>(overlap) / std::max(ref_total, 1);
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (const auto& x : a) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = x == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

// Per-order tf-idf vectors plus norms and the length used by the penalty.
struct CiderVector {
  std::array<std::map<std::vector<std::string>, double>, kCiderOrder> vec;
  std::array<double, kCiderOrder> norm{};
  double length = 0;
};

}  // namespace

std::vector<std::string> metric_tokens(std::string_view text) { return text::words(text::to_lower(text)); }

std::vector<TokenizedPair> tokenize_pairs(std::span<const std::string> candidates,
                                          std::span<const std::vector<std::string>> references) {
  if (candidates.size() != references.size()) {
    throw ValidationError("candidate and reference lists differ in length (" + std::to_string(candidates.size()) +
                          " vs " + std::to_string(references.size()) + ")");
  }
  std::vector<TokenizedPair> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out[i].candidate = metric_tokens(candidates[i]);
    for (const auto& r : references[i]) out[i].references.push_back(metric_tokens(r));
  }
  return out;
}

double bleu(std::span<const TokenizedPair> corpus, int max_n) {
  check_order(max_n);
  if (corpus.empty()) throw ValidationError("BLEU needs a non-empty corpus");
  std::vector<long> matches(max_n, 0);
  std::vector<long> totals(max_n, 0);
  double cand_len = 0;
  double ref_len = 0;
  for (const auto& p : corpus) {
    if (p.references.empty()) throw ValidationError("BLEU needs at least one reference per candidate");
    cand_len += static_cast<double>(p.candidate.size());
    ref_len += static_cast<double>(closest_ref_length(p));
    for (int n = 1; n <= max_n; ++n) {
      const auto cand = ngrams(p.candidate, n);
      std::vector<NgramCounts> refs;
      for (const auto& r : p.references) refs.push_back(ngrams(r, n));
      matches[n - 1] += clipped_matches(cand, refs);
      totals[n - 1] += total(cand);
    }
  }
  double log_sum = 0;
  for (int n = 0; n < max_n; ++n) {
    if (matches[n] == 0 || totals[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matches[n]) / static_cast<double>(totals[n]));
  }
  return 100.0 * brevity_penalty(cand_len, ref_len) * std::exp(log_sum / max_n);
}

double sentence_bleu(const TokenizedPair& p, int max_n) {
  check_order(max_n);
  if (p.references.empty()) throw ValidationError("BLEU needs at least one reference per candidate");
  double log_sum = 0;
  for (int n = 1; n <= max_n; ++n) {
    const auto cand = ngrams(p.candidate, n);
    std::vector<NgramCounts> refs;
    for (const auto& r : p.references) refs.push_back(ngrams(r, n));
    const double m = clipped_matches(cand, refs);
    const double t = total(cand);
    if (n == 1) {
      if (m == 0) return 0.0;
      log_sum += std::log(m / t);
    } else {
      log_sum += std::log((m + 1) / (t + 1));
    }
  }
  return 100.0 * brevity_penalty(static_cast<double>(p.candidate.size()), static_cast<double>(closest_ref_length(p))) *
         std::exp(log_sum / max_n);
}

double rouge(const TokenizedPair& p, RougeVariant variant) {
  double best = 0;
  for (const auto& ref : p.references) {
    double f = 0;
    if (variant == RougeVariant::kL) {
      const auto l = static_cast<int>(lcs_length(p.candidate, ref));
      f = f1(l, static_cast<int>(p.candidate.size()), static_cast<int>(ref.size()));
    } else {
      const int n = variant == RougeVariant::k1 ? 1 : 2;
      const auto c = ngrams(p.candidate, n);
      const auto r = ngrams(ref, n);
      int overlap = 0;
      for (const auto& [g, k] : c) {
        if (auto it = r.find(g); it != r.end()) overlap += std::min(k, it->second);
      }
      f = f1(overlap, total(c), total(r));
    }
    best = std::max(best, f);
  }
  return 100.0 * best;
}

std::vector<double> cider(std::span<const TokenizedPair> corpus) {
  if (corpus.size() < 2) {
    throw ValidationError("CIDEr needs at least two examples: document frequencies over a single example make every "
                          "idf weight zero (see the metrics section of the README)");
  }
  std::map<std::vector<std::string>, double> df;
  for (const auto& p : corpus) {
    std::set<std::vector<std::string>> seen;
    for (const auto& r : p.references) {
      for (int n = 1; n <= kCiderOrder; ++n) {
        for (const auto& [g, _] : ngrams(r, n)) seen.insert(g);
      }
    }
    for (const auto& g : seen) df[g] += 1;
  }
  const double log_docs = std::log(static_cast<double>(corpus.size()));

  const auto to_vector = [&](std::span<const std::string> tokens) {
    CiderVector v;
    for (int n = 1; n <= kCiderOrder; ++n) {
      for (const auto& [g, tf] : ngrams(tokens, n)) {
        const auto it = df.find(g);
        const double d = std::log(std::max(1.0, it == df.end() ? 0.0 : it->second));
        const double w = tf * (log_docs - d);
        v.vec[n - 1][g] = w;
        v.norm[n - 1] += w * w;
        // Length counts bigram occurrences, as in the reference scorer.
        if (n == 2) v.length += tf;
      }
    }
    for (auto& x : v.norm) x = std::sqrt(x);
    return v;
  };

  std::vector<double> out(corpus.size(), 0.0);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& p = corpus[i];
    if (p.references.empty()) throw ValidationError("CIDEr needs at least one reference per candidate");
    const auto hyp = to_vector(p.candidate);
    std::array<double, kCiderOrder> score{};
    for (const auto& r : p.references) {
      const auto ref = to_vector(r);
      const double delta = hyp.length - ref.length;
      const double penalty = std::exp(-(delta * delta) / (2 * kCiderSigma * kCiderSigma));
      for (int n = 0; n < kCiderOrder; ++n) {
        double val = 0;
        for (const auto& [g, w] : hyp.vec[n]) {
          const auto it = ref.vec[n].find(g);
          const double rw = it == ref.vec[n].end() ? 0.0 : it->second;
          val += std::min(w, rw) * rw;
        }
        if (hyp.norm[n] != 0 && ref.norm[n] != 0) val /= hyp.norm[n] * ref.norm[n];
        score[n] += val * penalty;
      }
    }
    const double mean = std::accumulate(score.begin(), score.end(), 0.0) / kCiderOrder;
    out[i] = mean / static_cast<double>(p.references.size()) * 10.0 * 10.0;
  }
  return out;
}

}  // namespace c2t::evaluation
