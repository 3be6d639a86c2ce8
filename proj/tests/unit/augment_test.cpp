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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "c2t/augment/augment.hpp"
#include "c2t/common/error.hpp"
#include "c2t/common/text.hpp"
#include "golden.hpp"

namespace c2t::augment {
namespace {

using providers::Vector;

corpus::Example make_example(std::string id, std::vector<std::string> concepts, std::vector<std::string> refs) {
  return {std::move(id), corpus::ConceptSet::from(std::move(concepts)), std::move(refs)};
}

std::shared_ptr<providers::ContextualEmbedder> table_embedder(const std::map<std::string, Vector>& table,
                                                              bool hash_fallback = false) {
  Json cfg = {{"kind", "stub-embedder"}, {"table", Json::object()}};
  for (const auto& [w, v] : table) cfg["table"][w] = v;
  if (hash_fallback) cfg["fallback"] = "hash";
  return providers::load_embedder(cfg);
}

std::shared_ptr<providers::AttentionProvider> weight_attention(const std::map<std::string, double>& weights,
                                                               std::size_t split_long = 0, std::size_t heads = 1) {
  Json cfg = {{"kind", "stub-attention"}, {"weights", Json::object()}, {"split_long", split_long}, {"heads", heads}};
  for (const auto& [w, v] : weights) cfg["weights"][w] = v;
  return providers::load_attention(cfg);
}

// Unit vector at the given cosine to (1, 0).
Vector at_cosine(double c) { return {c, std::sqrt(1.0 - c * c)}; }

TEST(KwCandidates, SoccerVocabularyIsProposed) {
  const auto ex = make_example("s1", {"match", "stadium", "watch"},
                               {"Fans watch the soccer match in the stadium.", "The league match drew fans."});
  const auto pool = kw_candidates(ex, *table_embedder({{"match", {1, 0, 0}}}, true));
  std::vector<std::string> words;
  for (const auto& c : pool) {
    words.push_back(c.word);
    EXPECT_TRUE(std::isfinite(c.score));
  }
  for (const std::string w : {"soccer", "league", "fans"}) {
    EXPECT_NE(std::find(words.begin(), words.end(), w), words.end()) << w;
  }
  for (const std::string w : {"match", "stadium", "watch", "the", "in"}) {
    EXPECT_EQ(std::find(words.begin(), words.end(), w), words.end()) << w;
  }
}

TEST(KwCandidates, ConceptOnlyReferenceGivesEmptyPool) {
  const auto ex = make_example("s2", {"dog", "run"}, {"dog run", "Dogs running."});
  EXPECT_TRUE(kw_candidates(ex, *table_embedder({{"dog", {1, 0}}})).empty());
}

TEST(KwCandidates, ScoresAreMeanCosines) {
  const auto ex = make_example("s3", {"anchor"}, {"anchor xray yankee"});
  const auto pool = kw_candidates(ex, *table_embedder({{"anchor", {1, 0}}, {"xray", at_cosine(0.9)}, {"yankee", at_cosine(0.4)}}));
  ASSERT_EQ(pool.size(), 2u);
  EXPECT_EQ(pool[0].word, "xray");
  EXPECT_NEAR(pool[0].score, 0.9, 1e-12);
  EXPECT_EQ(pool[1].word, "yankee");
  EXPECT_NEAR(pool[1].score, 0.4, 1e-12);
}

TEST(KwCandidates, ProviderErrorNamesExample) {
  const auto ex = make_example("bad-7", {"anchor"}, {"anchor unknownword"});
  try {
    kw_candidates(ex, *table_embedder({{"anchor", {1, 0}}}));
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_NE(std::string(e.what()).find("bad-7"), std::string::npos);
  }
}

TEST(GreedySelect, StageWiseArgmaxWithLexicographicTies) {
  const std::vector<Candidate> pool = {{"a", 0.2}, {"b", 0.8}, {"c", 0.5}};
  EXPECT_EQ(greedy_select(pool, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(greedy_select(pool, 0), (std::vector<std::size_t>{}));
  EXPECT_EQ(greedy_select(pool, 5), (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_EQ(greedy_select(pool, 2, Rank::kWorst), (std::vector<std::size_t>{0, 2}));
  const std::vector<Candidate> tied = {{"zeta", 0.5}, {"alpha", 0.5}, {"mid", 0.5}};
  EXPECT_EQ(greedy_select(tied, 3), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(KwAugment, StubTableSelection) {
  const auto ex = make_example("s4", {"anchor"}, {"anchor alpha bravo charlie"});
  const auto emb = table_embedder(
      {{"anchor", {1, 0}}, {"alpha", at_cosine(0.2)}, {"bravo", at_cosine(0.8)}, {"charlie", at_cosine(0.5)}});
  EXPECT_EQ(kw_augment(ex, 2, *emb).added, (std::vector<std::string>{"bravo", "charlie"}));
  EXPECT_TRUE(kw_augment(ex, 0, *emb).added.empty());
  EXPECT_EQ(kw_augment(ex, 5, *emb).added.size(), 3u);
  EXPECT_THROW(kw_augment(ex, 6, *emb), ValidationError);
  AugmentOptions worst;
  worst.rank = Rank::kWorst;
  EXPECT_EQ(kw_augment(ex, 1, *emb, worst).added, (std::vector<std::string>{"alpha"}));
}

TEST(KwAugment, SkierRowWithStubEmbeddings) {
  const auto ex = make_example("s5", {"head", "skier", "slope"},
                               {"The skier rests his head near the cabin at the top of the slope."});
  const auto emb = table_embedder({{"head", {1, 0, 0}},
                                   {"skier", {0, 1, 0}},
                                   {"slope", {0, 0, 1}},
                                   {"cabin", {1, 1, 1}},
                                   {"rests", {1, 0, -1}},
                                   {"near", {-1, 1, 0}},
                                   {"top", {0, 1, 0.2}}});
  const auto a = kw_augment(ex, 1, *emb);
  EXPECT_EQ(a.added, (std::vector<std::string>{"cabin"}));
  EXPECT_EQ(a.model_input(), "head skier slope cabin");
}

TEST(AttAugment, HolidaysRowKeepsFunctionWordsByDefault) {
  const auto ex = make_example("a1", {"family", "time", "spend"}, {"The family spend time at home during the holidays."});
  const auto att = weight_attention({{"at", 3.0}, {"holidays", 2.5}, {"family", 9.0}});
  EXPECT_EQ(att_augment(ex, 2, *att).added, (std::vector<std::string>{"at", "holidays"}));
  AugmentOptions opts;
  opts.att_stopwords = {"at"};
  // "the" occurs twice, so its received mass adds up within the reference.
  EXPECT_EQ(att_augment(ex, 2, *att, opts).added, (std::vector<std::string>{"holidays", "the"}));
}

TEST(AttAugment, StubWeightsOrderSelection) {
  const auto ex = make_example("a2", {"zulu"}, {"zulu wone wtwo wthree"});
  const auto att = weight_attention({{"wone", 3.0}, {"wtwo", 1.0}, {"wthree", 2.0}});
  EXPECT_EQ(att_augment(ex, 2, *att).added, (std::vector<std::string>{"wone", "wthree"}));
  EXPECT_TRUE(att_augment(ex, 0, *att).added.empty());
}

TEST(AttAugment, SubwordSplittingKeepsDominantWord) {
  const auto ex = make_example("a3", {"boat", "lake", "drive"},
                               {"A fisherman drives his boat across the lake.", "The fisherman waves from the lake."});
  const std::map<std::string, double> w = {{"fisherman", 4.0}, {"waves", 2.0}, {"across", 1.5}};
  EXPECT_EQ(att_augment(ex, 1, *weight_attention(w)).added, (std::vector<std::string>{"fisherman"}));
  EXPECT_EQ(att_augment(ex, 1, *weight_attention(w, 3, 4)).added, (std::vector<std::string>{"fisherman"}));
}

// Independent aggregation straight from the definition.
std::map<std::string, double> brute_force_attention(const corpus::Example& ex, const providers::AttentionProvider& p,
                                                    bool sum_heads) {
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto& ref : ex.references) {
    const auto a = p.attend(ref);
    std::map<std::string, double> here;
    for (std::size_t j = 0; j < a.positions(); ++j) {
      double mass = 0;
      for (std::size_t h = 0; h < a.heads; ++h) {
        for (std::size_t i = 0; i < a.positions(); ++i) {
          if (a.word_of_piece[i] != a.word_of_piece[j]) mass += a.at(h, i, j) / (sum_heads ? 1.0 : a.heads);
        }
      }
      here[text::to_lower(a.words[a.word_of_piece[j]])] += mass;
    }
    for (const auto& [w, m] : here) {
      acc[w].first += m;
      acc[w].second += 1;
    }
  }
  std::map<std::string, double> out;
  for (const auto& [w, sm] : acc) out[w] = sm.first / sm.second;
  return out;
}

std::vector<std::string> brute_force_greedy(std::map<std::string, double> scores, std::size_t k) {
  std::vector<std::string> out;
  while (out.size() < k && !scores.empty()) {
    auto best = scores.begin();
    for (auto it = scores.begin(); it != scores.end(); ++it) {
      if (it->second > best->second) best = it;  // map order gives the lexicographic tie-break
    }
    out.push_back(best->first);
    scores.erase(best);
  }
  return out;
}

TEST(Augment, RandomizedGreedyEquivalenceAndPrefixMonotonicity) {
  const std::vector<std::string> vocab = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf",
                                          "hotel", "india", "juliet", "kilo", "lima"};
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::normal_distribution<double> gauss;
    std::vector<std::string> concepts = {"mike", "november"};
    std::vector<std::string> refs;
    for (int r = 0; r < 3; ++r) {
      std::string s = "mike";
      for (int w = 0; w < 6; ++w) s += " " + vocab[pick(rng)];
      refs.push_back(s + " november");
    }
    const auto ex = make_example("r" + std::to_string(trial), concepts, refs);
    std::map<std::string, Vector> table;
    std::map<std::string, double> weights;
    for (const auto& w : vocab) {
      table[w] = {gauss(rng), gauss(rng), gauss(rng)};
      weights[w] = 0.5 + std::uniform_real_distribution<double>(0, 2)(rng);
    }
    table["bravo"] = table["alpha"];  // forced tie
    weights["delta"] = weights["charlie"];
    table["mike"] = {1, 0.5, 0};
    table["november"] = {0, 1, -0.5};
    const auto emb = table_embedder(table);
    const auto att = weight_attention(weights, trial % 2 ? 4 : 0, 1 + trial % 3);

    std::map<std::string, double> kw_scores;
    for (const auto& w : default_candidates(ex, text::english_stopwords())) {
      double s = 0;
      for (const auto& c : concepts) {
        const auto& u = table[w];
        const auto& v = table[c];
        double dot = 0, nu = 0, nv = 0;
        for (int d = 0; d < 3; ++d) {
          dot += u[d] * v[d];
          nu += u[d] * u[d];
          nv += v[d] * v[d];
        }
        s += dot / (std::sqrt(nu) * std::sqrt(nv));
      }
      kw_scores[w] = s / concepts.size();
    }
    auto att_scores = brute_force_attention(ex, *att, false);
    att_scores.erase("mike");
    att_scores.erase("november");

    std::vector<std::string> prev_kw, prev_att;
    for (std::size_t k = 0; k <= kMaxAugment; ++k) {
      const auto kw = kw_augment(ex, k, *emb).added;
      const auto at = att_augment(ex, k, *att).added;
      const auto kw_oracle = brute_force_greedy(kw_scores, k);
      ASSERT_EQ(kw.size(), kw_oracle.size());
      // Near-equal floating scores may legitimately differ in the last ulp; compare
      // selections only where the oracle gap is unambiguous.
      for (std::size_t i = 0; i < kw.size(); ++i) {
        if (kw[i] != kw_oracle[i]) EXPECT_NEAR(kw_scores[kw[i]], kw_scores[kw_oracle[i]], 1e-12);
      }
      EXPECT_EQ(at, brute_force_greedy(att_scores, k));
      EXPECT_TRUE(std::equal(prev_kw.begin(), prev_kw.end(), kw.begin()));
      EXPECT_TRUE(std::equal(prev_att.begin(), prev_att.end(), at.begin()));
      prev_kw = kw;
      prev_att = at;
    }
  }
}

TEST(AugmentSplit, OrderSkipErrorsAndRoundTrip) {
  const std::vector<corpus::Example> exs = {
      make_example("e1", {"anchor"}, {"anchor alpha bravo"}),
      make_example("e2", {"anchor"}, {"anchor charlie unknown"}),
      make_example("e3", {"anchor"}, {"anchor bravo charlie"}),
  };
  const auto emb = table_embedder(
      {{"anchor", {1, 0}}, {"alpha", at_cosine(0.2)}, {"bravo", at_cosine(0.8)}, {"charlie", at_cosine(0.5)}});
  AugmentProviders prov{emb.get(), nullptr};
  try {
    augment_split(exs, Method::kKw, 1, prov);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_NE(std::string(e.what()).find("e2"), std::string::npos);
  }
  AugmentOptions opts;
  opts.skip_errors = true;
  opts.workers = 3;
  const auto r = augment_split(exs, Method::kKw, 1, prov, opts);
  ASSERT_EQ(r.examples.size(), 3u);
  EXPECT_EQ(r.failed_ids, (std::vector<std::string>{"e2"}));
  EXPECT_EQ(r.examples[0].added, (std::vector<std::string>{"bravo"}));
  EXPECT_TRUE(r.examples[1].added.empty());
  EXPECT_EQ(r.examples[2].added, (std::vector<std::string>{"bravo"}));
  EXPECT_TRUE(augment_split({}, Method::kKw, 1, prov).examples.empty());
  EXPECT_EQ(augment_split(exs, Method::kAtt, 0, {}).examples.size(), 3u);
  EXPECT_THROW(augment_split(exs, Method::kAtt, 1, {}), ValidationError);

  testing::TempDir dir;
  write_augmented(dir / "aug.jsonl", r.examples);
  const auto back = load_augmented(dir / "aug.jsonl");
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[0].base, exs[0]);
  EXPECT_EQ(back[0].added, r.examples[0].added);
  EXPECT_EQ(back[2].method, Method::kKw);
  EXPECT_EQ(back[2].k, 1u);
}

TEST(AugmentSplit, HistogramOfAddedWordsOnToySplit) {
  const auto emb = providers::load_embedder(Json{{"kind", "hash-embedder"}, {"dim", 8}, {"seed", 5}});
  const std::vector<corpus::Example> exs = {
      make_example("t1", {"dog", "ball"}, {"The dog chases a red ball across the yard."}),
      make_example("t2", {"cat", "sleep"}, {"A cat sleeps."}),
      make_example("t3", {"sun", "rise"}, {"sun rise"}),
      make_example("t4", {"boat", "lake"}, {"Boats drift on the calm lake near old wooden docks."}),
  };
  const auto r = augment_split(exs, Method::kKw, 3, {emb.get(), nullptr});
  std::map<std::size_t, int> hist;
  for (const auto& a : r.examples) ++hist[a.added.size()];
  // t1: red, chases, yard, ...; t2: nothing left; t3: nothing; t4: drift, calm, ...
  EXPECT_EQ(hist, (std::map<std::size_t, int>{{0, 2}, {3, 2}}));
}

}  // namespace
}  // namespace c2t::augment
