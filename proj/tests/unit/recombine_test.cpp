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
#include <numeric>

#include "c2t/common/error.hpp"
#include "c2t/evaluation/coverage.hpp"
#include "c2t/recombine/recombine.hpp"
#include "golden.hpp"

namespace c2t::recombine {
namespace {

using keyphrase::Origin;
using keyphrase::RecombinedInput;

corpus::Example make_example(std::string id, std::vector<std::string> concepts, std::vector<std::string> refs) {
  return {std::move(id), corpus::ConceptSet::from(std::move(concepts)), std::move(refs)};
}

TEST(P2T, TwoElementInputIsOneOfTwoOrdersAndStable) {
  const std::vector<RecombinedInput> in = {{"x", {"A", "B"}, Origin::kReference}};
  const auto a = build_p2t_infer(in, 13);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_TRUE(a[0].input == "A <s> B" || a[0].input == "B <s> A");
  EXPECT_EQ(build_p2t_infer(in, 13), a);
  EXPECT_FALSE(a[0].target.has_value());
}

TEST(P2T, SingleElementHasNoSeparator) {
  const std::vector<RecombinedInput> in = {{"x", {"dog wags his tail"}, Origin::kReference}};
  EXPECT_EQ(build_p2t_infer(in, 1)[0].input, "dog wags his tail");
}

TEST(P2T, BothOrdersOccurWithBalancedFrequency) {
  std::size_t forward = 0;
  const std::size_t n = 1000;
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<RecombinedInput> in = {{"id" + std::to_string(i), {"A", "B"}, Origin::kReference}};
    forward += build_p2t_infer(in, i)[0].input == "A <s> B" ? 1 : 0;
  }
  const double f = static_cast<double>(forward) / n;
  EXPECT_GE(f, 0.4);
  EXPECT_LE(f, 0.6);
}

TEST(P2T, PermutationsAreValidAndRoundTrip) {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<std::string> elems;
    for (std::size_t i = 0; i < n; ++i) elems.push_back("phrase number " + std::to_string(i));
    const auto perm = draw_permutation(n, 99, "id");
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> iota(n);
    std::iota(iota.begin(), iota.end(), std::size_t{0});
    EXPECT_EQ(sorted, iota);
    const auto joined = join_elements(elems, perm);
    std::vector<std::string> permuted;
    for (std::size_t k : perm) permuted.push_back(elems[k]);
    EXPECT_EQ(split_input(joined), permuted);
  }
}

TEST(P2T, SeparatorCollisionIsRejected) {
  const std::vector<RecombinedInput> in = {{"bad", {"a <s> b", "c"}, Origin::kReference}};
  try {
    build_p2t_infer(in, 1);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("bad"), std::string::npos);
  }
}

TEST(P2T, TrainingSharesPermutationAcrossReferences) {
  const std::vector<corpus::Example> exs = {
      make_example("e1", {"dog", "ball"}, {"r1", "r2", "r3"}),
      make_example("e2", {"cat", "mat"}, {"q1"}),
  };
  const std::vector<RecombinedInput> in = {{"e2", {"cat sat", "mat"}, Origin::kReference},
                                           {"e1", {"dog chases", "red ball", "park"}, Origin::kReference}};
  const auto recs = build_p2t_train(in, exs, 13);
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[0].target, "q1");
  EXPECT_EQ(recs[1].target, "r1");
  EXPECT_EQ(recs[3].target, "r3");
  EXPECT_EQ(recs[1].input, recs[2].input);
  EXPECT_EQ(recs[2].input, recs[3].input);
  EXPECT_EQ(recs[1].permutation, recs[3].permutation);

  const std::vector<RecombinedInput> wrong = {{"e1", {"a"}, Origin::kReference}, {"zz", {"b"}, Origin::kReference}};
  EXPECT_THROW(build_p2t_train(wrong, exs, 13), ValidationError);
  EXPECT_THROW(build_p2t_train(std::span(wrong).first(1), exs, 13), ValidationError);
}

TEST(P2T, InferenceOnThreeInputs) {
  const std::vector<RecombinedInput> in = {
      {"a", {"x y", "z"}, Origin::kBaselineGeneration},
      {"b", {"p"}, Origin::kBaselineGeneration},
      {"c", {"m n", "o", "q r"}, Origin::kBaselineGeneration},
  };
  const auto recs = build_p2t_infer(in, 7);
  ASSERT_EQ(recs.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(recs[i].id, in[i].id);
    EXPECT_FALSE(recs[i].target);
  }
}

TEST(P2T, CoverageOfRenderedInputsIsPreserved) {
  const auto ex = make_example("c1", {"hang", "paint", "wall"}, {"hanging a painting on a wall at home"});
  keyphrase::ExtractionConfig cfg;
  cfg.max_n = 5;
  cfg.max_phrases = 1;
  const auto rin = keyphrase::build_recombined_input(ex, ex.references[0], Origin::kReference, cfg);
  const std::vector<RecombinedInput> in = {rin};
  for (const auto& r : build_p2t_infer(in, 3)) {
    EXPECT_DOUBLE_EQ(evaluation::coverage(ex.concepts, r.input), 100.0);
  }
}

TEST(P2TGenerate, EchoLookupAndErrors) {
  const std::vector<RecombinedInput> in = {{"a", {"dog runs", "park"}, Origin::kReference},
                                           {"b", {"cat"}, Origin::kReference}};
  const auto recs = build_p2t_infer(in, 5);
  const auto echo = providers::load_generator(Json{{"kind", "echo-generator"}});
  const auto out = p2t_generate(recs, *echo, {}, 2);
  ASSERT_EQ(out.size(), 2u);
  std::string expect = recs[0].input;
  expect.erase(expect.find(" <s>"), 4);
  EXPECT_EQ(out[0].text, expect);
  EXPECT_EQ(out[1], (corpus::Generation{"b", "cat"}));
  EXPECT_TRUE(p2t_generate({}, *echo).empty());

  Json table = Json::object();
  std::vector<P2TRecord> memo;
  for (int i = 0; i < 5; ++i) {
    const std::string input = "in" + std::to_string(i);
    table[input] = "target sentence " + std::to_string(i);
    memo.push_back({"m" + std::to_string(i), input, std::nullopt, {0}, 0});
  }
  const auto look = providers::load_generator(Json{{"kind", "lookup-generator"}, {"table", table}});
  const auto got = p2t_generate(memo, *look);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(got[i].text, "target sentence " + std::to_string(i));

  memo.push_back({"missing-id", "nope", std::nullopt, {0}, 0});
  try {
    p2t_generate(memo, *look);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_NE(std::string(e.what()).find("missing-id"), std::string::npos);
  }
}

TEST(P2T, JsonlRoundTrip) {
  const std::vector<RecombinedInput> in = {{"a", {"x y", "z"}, Origin::kReference}};
  const std::vector<corpus::Example> exs = {make_example("a", {"x", "z"}, {"x y z", "z x y"})};
  const auto recs = build_p2t_train(in, exs, 11);
  testing::TempDir dir;
  write_p2t(dir / "p.jsonl", recs);
  EXPECT_EQ(load_p2t(dir / "p.jsonl"), recs);
  EXPECT_FALSE(std::filesystem::exists(dir / "p.jsonl.quarantine"));
}

}  // namespace
}  // namespace c2t::recombine
