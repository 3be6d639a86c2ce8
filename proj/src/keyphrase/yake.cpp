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

#include "c2t/keyphrase/yake.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_map>
#include <utility>

namespace c2t::keyphrase {
namespace {

bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

std::size_t codepoints(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) n += (static_cast<unsigned char>(c) & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

// 'd' numeric, 'u' unparsable, 'a' acronym, 'n' proper noun, 'p' plain.
char word_tag(std::string_view word, std::size_t position) {
  std::string no_commas;
  for (char c : word) {
    if (c != ',') no_commas.push_back(c);
  }
  if (all_digits(no_commas)) return 'd';
  if (const auto dot = no_commas.find('.'); dot != std::string::npos) {
    std::string one_dot = no_commas;
    one_dot.erase(dot, 1);
    if (all_digits(one_dot)) return 'd';
  }
  std::size_t n_digit = 0, n_alpha = 0, n_punct = 0, n_upper = 0, n_lower = 0;
  for (char ch : word) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 0x80) {
      ++n_alpha;
    } else if (std::isdigit(c)) {
      ++n_digit;
    } else if (std::isalpha(c)) {
      ++n_alpha;
      (std::isupper(c) ? n_upper : n_lower) += 1;
    } else if (is_ascii_punct(c)) {
      ++n_punct;
    }
  }
  if ((n_digit > 0 && n_alpha > 0) || (n_digit == 0 && n_alpha == 0) || n_punct > 1) return 'u';
  if (n_upper > 0 && n_lower == 0) return 'a';
  const auto first = static_cast<unsigned char>(word.front());
  if (codepoints(word) > 1 && first < 0x80 && std::isupper(first) && position > 0 && n_upper == 1) return 'n';
  return 'p';
}

bool discarded(char tag) { return tag == 'u' || tag == 'd'; }

struct Term {
  std::string key;
  bool stopword = false;
  std::size_t tf = 0;
  std::size_t tf_a = 0;
  std::size_t tf_n = 0;
  std::map<std::size_t, std::size_t> sentences;  // sentence index -> occurrences
  double h = 0.0;
};

struct Candidate {
  std::vector<std::size_t> terms;
  std::vector<std::string> surface;
  std::string key;
  Span span;
  std::size_t tf = 0;
  bool valid_tags = false;  // some occurrence has no discarded tag
};

struct Edge {
  std::size_t from, to;
  friend bool operator<(const Edge& a, const Edge& b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); }
};

class Scorer {
 public:
  Scorer(const text::WordSet& stopwords, std::size_t max_n) : stopwords_(stopwords), max_n_(max_n) {}

  void build(std::span<const text::Token> tokens) {
    std::size_t sentence = 0;
    std::size_t pos_in_sentence = 0;
    bool sentence_open = false;
    struct BlockEntry {
      std::size_t term;
      char tag;
      std::string surface;
      std::size_t token;
    };
    std::vector<BlockEntry> block;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto& tok = tokens[i];
      sentence_open = true;
      if (tok.punct) {
        block.clear();
        if (tok.text.find_first_of(".!?") != std::string::npos) {
          ++sentence;
          pos_in_sentence = 0;
          sentence_open = false;
        } else {
          ++pos_in_sentence;
        }
        continue;
      }
      const char tag = word_tag(tok.text, pos_in_sentence);
      const std::size_t t = term_of(tok.text);
      Term& term = terms_[t];
      ++term.tf;
      if (tag == 'a') ++term.tf_a;
      if (tag == 'n') ++term.tf_n;
      ++term.sentences[sentence];

      if (!discarded(tag) && !block.empty() && !discarded(block.back().tag)) {
        ++edges_[Edge{block.back().term, t}];
      }

      // n-grams ending at this word, shortest first.
      std::vector<std::size_t> ids{t};
      std::vector<std::string> surface{tok.text};
      std::string tags(1, tag);
      std::size_t start_token = i;
      add_candidate(ids, surface, tags, Span{start_token, i + 1});
      const std::size_t lookback = std::min(block.size(), max_n_ - 1);
      for (std::size_t k = 1; k <= lookback; ++k) {
        const auto& prev = block[block.size() - k];
        ids.insert(ids.begin(), prev.term);
        surface.insert(surface.begin(), prev.surface);
        tags.insert(tags.begin(), prev.tag);
        add_candidate(ids, surface, tags, Span{prev.token, i + 1});
      }
      block.push_back({t, tag, tok.text, i});
      ++pos_in_sentence;
    }
    sentences_ = sentence + (sentence_open ? 1 : 0);
  }

  std::vector<ScoredCandidate> score() {
    if (terms_.empty()) return {};
    std::vector<double> valid_tf;
    double max_tf = 0.0;
    for (const auto& t : terms_) {
      max_tf = std::max(max_tf, static_cast<double>(t.tf));
      if (!t.stopword) valid_tf.push_back(static_cast<double>(t.tf));
    }
    if (valid_tf.empty()) return {};
    double sum = 0.0;
    for (double v : valid_tf) sum += v;
    const double avg = sum / static_cast<double>(valid_tf.size());
    double sq = 0.0;
    for (double v : valid_tf) sq += (v - avg) * (v - avg);
    const double std_tf = std::sqrt(sq / static_cast<double>(valid_tf.size()));

    std::vector<std::size_t> out_distinct(terms_.size()), in_distinct(terms_.size());
    std::vector<double> out_weight(terms_.size()), in_weight(terms_.size());
    for (const auto& [e, w] : edges_) {
      ++out_distinct[e.from];
      out_weight[e.from] += static_cast<double>(w);
      ++in_distinct[e.to];
      in_weight[e.to] += static_cast<double>(w);
    }

    for (std::size_t i = 0; i < terms_.size(); ++i) {
      Term& t = terms_[i];
      const double tf = static_cast<double>(t.tf);
      const double pwl = in_weight[i] > 0 ? static_cast<double>(in_distinct[i]) / in_weight[i] : 0.0;
      const double pwr = out_weight[i] > 0 ? static_cast<double>(out_distinct[i]) / out_weight[i] : 0.0;
      const double w_rel = (0.5 + (pwl * (tf / max_tf))) + (0.5 + (pwr * (tf / max_tf)));
      const double w_freq = (avg + std_tf) > 0 ? tf / (avg + std_tf) : 0.0;
      const double w_spread = static_cast<double>(t.sentences.size()) / static_cast<double>(sentences_);
      const double w_case = static_cast<double>(std::max(t.tf_a, t.tf_n)) / (1.0 + std::log(tf));
      const double w_pos = std::log(std::log(3.0 + median_sentence(t)));
      t.h = (w_pos * w_rel) / (w_case + (w_freq / w_rel) + (w_spread / w_rel));
    }

    std::vector<ScoredCandidate> out;
    for (const auto& c : candidates_) {
      if (!c.valid_tags) continue;
      if (terms_[c.terms.front()].stopword || terms_[c.terms.back()].stopword) continue;
      out.push_back({c.surface, c.key, c.span, c.tf, candidate_score(c)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ScoredCandidate& a, const ScoredCandidate& b) { return a.score < b.score; });
    return out;
  }

 private:
  std::size_t term_of(const std::string& word) {
    const std::string lower = text::to_lower(word);
    std::string key = lower;
    if (codepoints(key) > 3 && key.back() == 's') key.pop_back();
    if (auto it = term_index_.find(key); it != term_index_.end()) return it->second;
    std::string bare;
    for (char c : key) {
      if (!is_ascii_punct(static_cast<unsigned char>(c))) bare.push_back(c);
    }
    Term t;
    t.key = key;
    t.stopword = stopwords_.contains(lower) || stopwords_.contains(key) || codepoints(bare) < 3;
    terms_.push_back(std::move(t));
    term_index_.emplace(key, terms_.size() - 1);
    return terms_.size() - 1;
  }

  void add_candidate(const std::vector<std::size_t>& ids, const std::vector<std::string>& surface,
                     const std::string& tags, Span span) {
    std::string key;
    for (std::size_t k = 0; k < surface.size(); ++k) {
      if (k) key.push_back(' ');
      key += text::to_lower(surface[k]);
    }
    auto [it, inserted] = candidate_index_.try_emplace(key, candidates_.size());
    if (inserted) candidates_.push_back({ids, surface, key, span, 0, false});
    Candidate& c = candidates_[it->second];
    ++c.tf;
    if (std::none_of(tags.begin(), tags.end(), discarded)) c.valid_tags = true;
  }

  static double median_sentence(const Term& t) {
    std::vector<double> ids;
    for (const auto& [s, _] : t.sentences) ids.push_back(static_cast<double>(s));
    const std::size_t n = ids.size();
    return n % 2 == 1 ? ids[n / 2] : (ids[n / 2 - 1] + ids[n / 2]) / 2.0;
  }

  double edge_tf(std::size_t from, std::size_t to) const {
    const auto it = edges_.find(Edge{from, to});
    return it == edges_.end() ? 0.0 : static_cast<double>(it->second);
  }

  double candidate_score(const Candidate& c) const {
    double sum_h = 0.0;
    double prod_h = 1.0;
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
      const Term& term = terms_[c.terms[k]];
      if (!term.stopword) {
        sum_h += term.h;
        prod_h *= term.h;
        continue;
      }
      double p1 = 0.0, p2 = 0.0;
      if (k > 0) p1 = edge_tf(c.terms[k - 1], c.terms[k]) / static_cast<double>(terms_[c.terms[k - 1]].tf);
      if (k + 1 < c.terms.size()) p2 = edge_tf(c.terms[k], c.terms[k + 1]) / static_cast<double>(terms_[c.terms[k + 1]].tf);
      const double prob = p1 * p2;
      prod_h *= 1 + (1 - prob);
      sum_h -= 1 - prob;
    }
    return prod_h / ((sum_h + 1) * static_cast<double>(c.tf));
  }

  const text::WordSet& stopwords_;
  std::size_t max_n_;
  std::vector<Term> terms_;
  std::unordered_map<std::string, std::size_t> term_index_;
  std::map<Edge, std::size_t> edges_;
  std::vector<Candidate> candidates_;
  std::unordered_map<std::string, std::size_t> candidate_index_;
  std::size_t sentences_ = 0;
};

}  // namespace

std::vector<ScoredCandidate> score_candidates(std::span<const text::Token> tokens, const ScoringOptions& options) {
  Scorer scorer(options.stopwords ? *options.stopwords : text::english_stopwords(), std::max<std::size_t>(1, options.max_n));
  scorer.build(tokens);
  return scorer.score();
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return 1.0 - static_cast<double>(row[b.size()]) / static_cast<double>(longest);
}

}  // namespace c2t::keyphrase
