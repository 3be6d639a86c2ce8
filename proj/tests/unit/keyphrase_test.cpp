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

#include <cmath>
#include <map>

#include "c2t/common/error.hpp"
#include "c2t/evaluation/coverage.hpp"
#include "c2t/keyphrase/keyphrase.hpp"
#include "golden.hpp"

namespace c2t::keyphrase {
namespace {

corpus::Example make_example(std::string id, std::vector<std::string> concepts, std::string ref = "x") {
  return {std::move(id), corpus::ConceptSet::from(std::move(concepts)), {std::move(ref)}};
}

ExtractionConfig config(std::size_t max_n, std::size_t max_phrases = 5) {
  ExtractionConfig c;
  c.max_n = max_n;
  c.max_phrases = max_phrases;
  return c;
}

TEST(YakeScoring, MatchesFrozenReferenceRanking) {
  const auto golden = testing::load_golden("yake_scores.json");
  ASSERT_FALSE(golden.at("cases").empty());
  for (const auto& c : golden.at("cases")) {
    const std::string text = c.at("text");
    const auto n = c.at("max_n").get<std::size_t>();
    const auto tokens = text::tokenize(text);
    const auto got = score_candidates(tokens, {n, nullptr});
    const auto& want = c.at("candidates");
    ASSERT_EQ(got.size(), want.size()) << text << " n=" << n;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].key, want[i].at("key").get<std::string>()) << text << " rank " << i;
      const double w = want[i].at("score");
      EXPECT_NEAR(got[i].score, w, 1e-12 * std::max(1.0, std::abs(w))) << got[i].key;
    }
  }
}

TEST(YakeScoring, SpansMatchSurfaceTokens) {
  const std::string s = "Runners cross the finish line as spectators cheer loudly from both sides of the road!";
  const auto tokens = text::tokenize(s);
  for (const auto& c : score_candidates(tokens, {3, nullptr})) {
    ASSERT_LE(c.span.end, tokens.size());
    ASSERT_EQ(c.span.end - c.span.begin, c.tokens.size());
    for (std::size_t k = 0; k < c.tokens.size(); ++k) EXPECT_EQ(tokens[c.span.begin + k].text, c.tokens[k]);
  }
}

TEST(Levenshtein, Similarity) {
  EXPECT_DOUBLE_EQ(levenshtein_similarity("", ""), 1.0);
  EXPECT_DOUBLE_EQ(levenshtein_similarity("abc", "abc"), 1.0);
  EXPECT_DOUBLE_EQ(levenshtein_similarity("kitten", "sitting"), 1.0 - 3.0 / 7.0);
  EXPECT_DOUBLE_EQ(levenshtein_similarity("abc", ""), 0.0);
}

TEST(ExtractKeyphrases, DogSentenceTopPhrase) {
  const auto phrases = extract_keyphrases("A dog wags his tail at the boy.", config(5));
  ASSERT_FALSE(phrases.empty());
  EXPECT_EQ(phrases.front().tokens, (std::vector<std::string>{"dog", "wags", "his", "tail"}));
}

TEST(ExtractKeyphrases, SingleWordGivesNothing) {
  EXPECT_TRUE(extract_keyphrases("hello", config(3)).empty());
  EXPECT_TRUE(extract_keyphrases("hello.", config(3)).empty());
}

TEST(ExtractKeyphrases, MatchesFrozenGreedySelection) {
  const auto golden = testing::load_golden("yake_scores.json");
  for (const auto& c : golden.at("cases")) {
    const std::string text = c.at("text");
    std::vector<std::string> got;
    for (const auto& p : extract_keyphrases(text, config(c.at("max_n").get<std::size_t>()))) {
      got.push_back(text::to_lower(p.text()));
    }
    EXPECT_EQ(got, c.at("selected").get<std::vector<std::string>>()) << text << " n=" << c.at("max_n");
  }
}

TEST(ExtractKeyphrases, Properties) {
  const std::vector<std::string> texts = {
      "a soldier takes a knee while providing security during a patrol outside of the village.",
      "Children build sandcastles on the beach while waves crash against the rocks, and gulls circle above.",
      "The chef slices fresh tomatoes. Then the chef tosses the tomatoes into a large salad bowl.",
  };
  for (std::size_t n : {2, 3, 5}) {
    for (const auto& t : texts) {
      const auto base = extract_keyphrases(t, config(n, 5));
      ASSERT_LE(base.size(), 5u);
      for (std::size_t i = 0; i < base.size(); ++i) {
        EXPECT_GE(base[i].tokens.size(), 2u);
        EXPECT_LE(base[i].tokens.size(), n);
        if (i) EXPECT_LE(base[i - 1].score, base[i].score);
        for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(base[i].span.overlaps(base[j].span));
      }
      // Terminal punctuation and trailing whitespace do not matter.
      std::string bare = t;
      while (!bare.empty() && (bare.back() == '.' || bare.back() == '!')) bare.pop_back();
      for (const auto& variant : {bare, bare + ".", bare + "  \n", bare + "!"}) {
        const auto other = extract_keyphrases(variant, config(n, 5));
        ASSERT_EQ(other.size(), base.size()) << variant;
        for (std::size_t i = 0; i < base.size(); ++i) {
          EXPECT_EQ(other[i].tokens, base[i].tokens);
          EXPECT_DOUBLE_EQ(other[i].score, base[i].score);
        }
      }
      // Monotone prefix under growing max_phrases.
      for (std::size_t k = 1; k < 5; ++k) {
        const auto small = extract_keyphrases(t, config(n, k));
        const auto big = extract_keyphrases(t, config(n, k + 1));
        ASSERT_LE(small.size(), big.size());
        for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i].tokens, big[i].tokens);
      }
    }
  }
}

TEST(ExtractKeyphrases, DedupThresholdSuppressesNearDuplicates) {
  ExtractionConfig c = config(2, 5);
  const std::string t = "red apples, red apple, green pears";
  c.dedup_threshold = 1.0;
  const auto loose = extract_keyphrases(t, c);
  c.dedup_threshold = 0.9;
  const auto strict = extract_keyphrases(t, c);
  EXPECT_LT(strict.size(), loose.size());
}

TEST(ExtractionConfig, Validation) {
  ExtractionConfig c;
  c.max_n = 1;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.max_phrases = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.dedup_threshold = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c.dedup_threshold = 1.0;
  EXPECT_NO_THROW(c.validate());
}

TEST(RecombinedInput, HangingPaintingRow) {
  const auto ex = make_example("e1", {"hang", "paint", "wall"});
  const auto r = build_recombined_input(ex, "hanging a painting on a wall at home", Origin::kReference, config(5, 1));
  EXPECT_EQ(r.elements, (std::vector<std::string>{"hanging a painting", "wall"}));
}

TEST(RecombinedInput, SheepRowRestoresUncoveredConcepts) {
  const auto ex = make_example("e2", {"dip", "herd", "sheep", "wait"});
  const auto r = build_recombined_input(
      ex, "a herd of many sheep crowded together in a stable waiting to be dipped for ticks and other pests",
      Origin::kReference, config(5, 1));
  EXPECT_EQ(r.elements, (std::vector<std::string>{"herd of many sheep crowded", "dip", "wait"}));
}

TEST(RecombinedInput, DogRowNeedsNoRestoration) {
  const auto ex = make_example("e3", {"dog", "tail", "wag"});
  const auto r = build_recombined_input(ex, "A dog wags his tail at the boy.", Origin::kReference, config(5, 1));
  EXPECT_EQ(r.elements, (std::vector<std::string>{"dog wags his tail"}));
}

TEST(RecombinedInput, EmptySourceFallsBackToConcepts) {
  const auto ex = make_example("e4", {"ball", "throw"});
  EXPECT_EQ(build_recombined_input(ex, "   ", Origin::kBaselineGeneration, config(3)).elements,
            (std::vector<std::string>{"ball", "throw"}));
}

TEST(RecombinedInput, ConceptsAsTextStayCovered) {
  const auto ex = make_example("e5", {"field", "frisbee", "dog", "catch"});
  const auto r = build_recombined_input(ex, "field frisbee dog catch", Origin::kReference, config(2));
  EXPECT_LE(r.elements.size(), ex.concepts.size());
  EXPECT_DOUBLE_EQ(evaluation::coverage(ex.concepts, text::join(r.elements, " ")), 100.0);
}

TEST(RecombinedSplit, AlignsIdsAndReportsMissing) {
  const std::vector<corpus::Example> exs = {make_example("a", {"dog", "run"}), make_example("b", {"cat", "sit"}),
                                            make_example("c", {"sun", "set"})};
  const std::map<std::string, std::string> texts = {
      {"a", "The dog runs across the wide field."}, {"b", "A cat sits quietly on the sofa."}, {"c", "The sun sets."}};
  const auto out = build_recombined_split(exs, texts, Origin::kReference, config(3), 2);
  ASSERT_EQ(out.size(), 3u);
  for (std::size_t i = 0; i < exs.size(); ++i) {
    EXPECT_EQ(out[i].id, exs[i].id);
    EXPECT_DOUBLE_EQ(evaluation::coverage(exs[i].concepts, text::join(out[i].elements, " ")), 100.0);
  }
  EXPECT_TRUE(build_recombined_split({}, texts, Origin::kReference, config(3)).empty());
  try {
    build_recombined_split(exs, {{"a", "x y"}, {"b", "x y"}}, Origin::kReference, config(3));
    FAIL() << "expected LookupError";
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos);
  }
}

TEST(RecombinedInput, JsonRoundTrip) {
  const RecombinedInput r{"id7", {"hanging a painting", "wall"}, Origin::kBaselineGeneration};
  EXPECT_EQ(recombined_from_json(Json::parse(to_json(r).dump())), r);
  EXPECT_THROW(recombined_from_json(Json::parse(R"({"id":"x"})")), ParseError);
  EXPECT_THROW(recombined_from_json(Json::parse(R"({"id":"x","elements":[],"origin":"reference"})")), ValidationError);
}

}  // namespace
}  // namespace c2t::keyphrase
