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

#include "c2t/common/error.hpp"
#include "c2t/evaluation/metrics.hpp"
#include "golden.hpp"

namespace c2t::evaluation {
namespace {

constexpr double kTol = 1e-9;

std::vector<TokenizedPair> pairs_of(const nlohmann::json& examples) {
  std::vector<std::string> cands;
  std::vector<std::vector<std::string>> refs;
  for (const auto& e : examples) {
    cands.push_back(e.at("candidate"));
    refs.push_back(e.at("references"));
  }
  return tokenize_pairs(cands, refs);
}

TokenizedPair pair(const std::string& c, std::vector<std::string> refs) {
  return tokenize_pairs(std::vector<std::string>{c}, std::vector<std::vector<std::string>>{std::move(refs)})[0];
}

class GoldenMetrics : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { golden_ = new nlohmann::json(testing::load_golden("metrics.json")); }
  static void TearDownTestSuite() { delete golden_; }
  static nlohmann::json* golden_;
};
nlohmann::json* GoldenMetrics::golden_ = nullptr;

TEST_F(GoldenMetrics, CorpusBleuMatchesOracle) {
  for (const auto& c : *golden_) {
    const auto pairs = pairs_of(c.at("examples"));
    for (int n = 1; n <= 4; ++n) {
      EXPECT_NEAR(bleu(pairs, n), c.at("bleu").at(std::to_string(n)).get<double>(), kTol)
          << c.at("name") << " BLEU-" << n;
    }
  }
}

TEST_F(GoldenMetrics, SentenceBleuMatchesOracle) {
  for (const auto& c : *golden_) {
    const auto pairs = pairs_of(c.at("examples"));
    for (int n = 1; n <= 4; ++n) {
      const auto& want = c.at("sentence_bleu").at(std::to_string(n));
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        EXPECT_NEAR(sentence_bleu(pairs[i], n), want[i].get<double>(), kTol) << c.at("name") << " " << i;
      }
    }
  }
}

TEST_F(GoldenMetrics, RougeMatchesOracle) {
  for (const auto& c : *golden_) {
    const auto pairs = pairs_of(c.at("examples"));
    for (const auto& [name, variant] : {std::pair{"rouge1", RougeVariant::k1}, std::pair{"rouge2", RougeVariant::k2},
                                        std::pair{"rougeL", RougeVariant::kL}}) {
      const auto& want = c.at("rouge").at(name);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        EXPECT_NEAR(rouge(pairs[i], variant), want[i].get<double>(), kTol) << c.at("name") << " " << name << " " << i;
      }
    }
  }
}

TEST_F(GoldenMetrics, CiderMatchesOracle) {
  for (const auto& c : *golden_) {
    const auto pairs = pairs_of(c.at("examples"));
    const auto got = cider(pairs);
    const auto& want = c.at("cider");
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got[i], want[i].get<double>(), kTol) << c.at("name") << " " << i;
    }
  }
}

TEST(Bleu, IdenticalIsExactlyHundredDisjointIsZero) {
  const std::vector<TokenizedPair> same = {pair("a dog runs in the park", {"a dog runs in the park"})};
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(bleu(same, n), 100.0);
  const std::vector<TokenizedPair> none = {pair("alpha beta", {"gamma delta"})};
  EXPECT_EQ(bleu(none, 1), 0.0);
  EXPECT_THROW(bleu(std::vector<TokenizedPair>{}, 4), ValidationError);
  EXPECT_THROW(bleu(same, 5), ValidationError);
}

TEST(Bleu, HandComputedTwoSentenceCorpus) {
  // Candidates "the cat sat" / "a dog" against "the cat sat down" / "a dog".
  // p1 = 5/5, p2 = 3/3, c = 5, r = 6, BP = exp(1 - 6/5).
  const std::vector<TokenizedPair> corpus = {pair("the cat sat", {"the cat sat down"}), pair("a dog", {"a dog"})};
  EXPECT_NEAR(bleu(corpus, 2), 100.0 * std::exp(1.0 - 6.0 / 5.0), 1e-12);
}

TEST(Rouge, DocumentedExamples) {
  EXPECT_NEAR(rouge(pair("the cat sat", {"the cat"}), RougeVariant::k1), 80.0, 1e-12);
  EXPECT_EQ(rouge(pair("a b c", {"a b c"}), RougeVariant::kL), 100.0);
  EXPECT_EQ(rouge(pair("a b c", {"a b c"}), RougeVariant::k2), 100.0);
  EXPECT_EQ(rouge(pair("a b", {"c d"}), RougeVariant::k1), 0.0);
  // Best reference wins.
  EXPECT_EQ(rouge(pair("x y", {"p q", "x y"}), RougeVariant::k1), 100.0);
}

TEST(Rouge, PunctuationAndCaseIgnored) {
  EXPECT_EQ(rouge(pair("The Cat, sat!", {"the cat sat"}), RougeVariant::kL), 100.0);
}

TEST(Cider, SingletonCorpusIsRejectedAndDisjointIsZero) {
  const std::vector<TokenizedPair> one = {pair("a b", {"a b"})};
  EXPECT_THROW(cider(one), ValidationError);
  const std::vector<TokenizedPair> disjoint = {pair("x y z", {"a b c"}), pair("u v w", {"d e f"})};
  for (double v : cider(disjoint)) EXPECT_EQ(v, 0.0);
}

TEST(Cider, SelfConsensusIsMaximal) {
  const std::vector<TokenizedPair> same = {pair("a dog runs fast", {"a dog runs fast"}),
                                           pair("the cat sleeps now", {"the cat sleeps now"})};
  const std::vector<TokenizedPair> off = {pair("a dog runs", {"a dog runs fast"}),
                                          pair("the cat sleeps now", {"the cat sleeps now"})};
  const auto s = cider(same);
  const auto o = cider(off);
  EXPECT_NEAR(s[0], 100.0, 1e-9);
  EXPECT_LT(o[0], s[0]);
}

}  // namespace
}  // namespace c2t::evaluation
