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

#include <chrono>
#include <set>

#include "c2t/common/error.hpp"
#include "c2t/corpus/corpus.hpp"
#include "golden.hpp"
#include "synthetic.hpp"

namespace c2t::corpus {
namespace {

TEST(ConceptSet, Invariants) {
  const auto c = ConceptSet::from({"Dog", "frisbee"});
  EXPECT_EQ(c.concepts(), (std::vector<std::string>{"dog", "frisbee"}));
  EXPECT_TRUE(c.contains("dog"));
  EXPECT_THROW(ConceptSet::from({}), ValidationError);
  EXPECT_THROW(ConceptSet::from({"dog", "DOG"}), ValidationError);
  EXPECT_THROW(ConceptSet::from({"hot dog"}), ValidationError);
  EXPECT_THROW(ConceptSet::from({""}), ValidationError);
  EXPECT_THROW(ConceptSet::from(std::vector<std::string>(17, "x")), ValidationError);
}

TEST(Corpus, RoundTripAndLineNumberedErrors) {
  testing::TempDir dir;
  const auto ex = testing::synthetic_corpus({{{3, 4}, {4, 2}}, 10, 5, "t"});
  write_corpus(dir / "c.jsonl", ex);
  EXPECT_EQ(load_corpus(dir / "c.jsonl"), ex);
  write_file_atomic(dir / "dup.jsonl",
                    "{\"id\":\"a\",\"concepts\":[\"x\"],\"references\":[\"x\"]}\n"
                    "{\"id\":\"a\",\"concepts\":[\"y\"],\"references\":[\"y\"]}\n");
  EXPECT_THROW(load_corpus(dir / "dup.jsonl"), ValidationError);
  write_file_atomic(dir / "missing.jsonl", "{\"id\":\"a\",\"concepts\":[\"x\"]}\n");
  try {
    load_corpus(dir / "missing.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("references"), std::string::npos);
  }
}

TEST(Generations, LoadWriteAndField) {
  testing::TempDir dir;
  const std::vector<Generation> g = {{"a", "one"}, {"b", "two"}};
  write_generations(dir / "g.jsonl", g);
  EXPECT_EQ(load_generations(dir / "g.jsonl"), g);
  EXPECT_THROW(load_generations(dir / "g.jsonl", "best"), ParseError);
}

TEST(Splits, DevOShapedCorpusHitsTableTargetsExactly) {
  const auto pool = testing::dev_o_shaped_corpus();
  const auto pool_stats = split_stats(pool);
  ASSERT_EQ(pool_stats.total_sets, 993u);
  ASSERT_EQ(pool_stats.total_sentences, 4018u);

  const auto start = std::chrono::steady_clock::now();
  const auto s = build_splits(pool, default_dev_spec(), default_test_spec());
  const auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 5.0);

  const auto dev = split_stats(s.dev);
  const auto test = split_stats(s.test);
  EXPECT_EQ(dev.total_sets, 240u);
  EXPECT_EQ(dev.by_size, (std::map<std::size_t, std::size_t>{{3, 120}, {4, 60}, {5, 60}}));
  EXPECT_EQ(dev.total_sentences, 984u);
  EXPECT_EQ(test.total_sets, 360u);
  EXPECT_EQ(test.by_size, (std::map<std::size_t, std::size_t>{{4, 180}, {5, 180}}));
  EXPECT_EQ(test.total_sentences, 1583u);

  std::set<std::string> ids;
  for (const auto& e : s.dev) ids.insert(e.id);
  for (const auto& e : s.test) EXPECT_FALSE(ids.contains(e.id)) << "overlap " << e.id;
}

TEST(Splits, TargetsReachedAcrossCorpusAndSplitSeeds) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto pool = testing::dev_o_shaped_corpus(seed * 7919);
    auto dev_spec = default_dev_spec();
    dev_spec.seed = seed;
    const auto s = build_splits(pool, dev_spec, default_test_spec());
    EXPECT_EQ(split_stats(s.dev).total_sentences, 984u) << seed;
    EXPECT_EQ(split_stats(s.test).total_sentences, 1583u) << seed;
    EXPECT_EQ(split_stats(s.dev).total_sets, 240u) << seed;
    EXPECT_EQ(split_stats(s.test).total_sets, 360u) << seed;
  }
}

TEST(Splits, DeterministicAndIndependentOfFileOrder) {
  auto pool = testing::dev_o_shaped_corpus(3);
  const auto a = build_splits(pool, default_dev_spec(), default_test_spec());
  const auto b = build_splits(pool, default_dev_spec(), default_test_spec());
  EXPECT_EQ(a.dev, b.dev);
  EXPECT_EQ(a.test, b.test);
  std::reverse(pool.begin(), pool.end());
  const auto c = build_splits(pool, default_dev_spec(), default_test_spec());
  std::set<std::string> ida;
  std::set<std::string> idc;
  for (const auto& e : a.dev) ida.insert(e.id);
  for (const auto& e : c.dev) idc.insert(e.id);
  EXPECT_EQ(ida, idc);
  auto other = default_dev_spec();
  other.seed = 99;
  const auto d = build_splits(pool, other, default_test_spec());
  EXPECT_NE(split_stats(d.dev).total_sets, 0u);
  EXPECT_NE(d.dev, c.dev);
}

TEST(Splits, CapacityErrorsNameTheDeficit) {
  const auto pool = testing::synthetic_corpus({{{3, 10}, {4, 5}}, 30, 1, "s"});
  SplitSpec dev{"dev_CG", {{3, 8}}, std::nullopt, 1};
  SplitSpec test{"test_CG", {{3, 4}}, std::nullopt, 1};
  try {
    build_splits(pool, dev, test);
    FAIL();
  } catch (const CapacityError& e) {
    EXPECT_NE(std::string(e.what()).find("deficit 2"), std::string::npos) << e.what();
  }
  dev.counts = {{3, 2}};
  dev.sentences = 1000;
  EXPECT_THROW(build_splits(pool, dev, test), CapacityError);
}

TEST(Splits, SpecJsonRoundTrip) {
  const auto s = default_test_spec();
  const auto back = split_spec_from_json(Json::parse(to_json(s).dump()));
  EXPECT_EQ(back.counts, s.counts);
  EXPECT_EQ(back.sentences, s.sentences);
  EXPECT_THROW(split_spec_from_json(Json{{"name", "dev_X"}, {"counts", Json::object()}}), ValidationError);
  EXPECT_THROW(split_spec_from_json(Json{{"name", "dev_CG"}, {"counts", {{"three", 1}}}}), ParseError);
}

}  // namespace
}  // namespace c2t::corpus
