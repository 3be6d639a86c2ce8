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

#include <httplib.h>

#include <cmath>
#include <cstdlib>
#include <thread>

#include "c2t/common/error.hpp"
#include "c2t/providers/providers.hpp"

namespace c2t::providers {
namespace {

TEST(Cosine, KnownValues) {
  const Vector u{1, 2, 3}, v{4, 5, 6};
  EXPECT_NEAR(cosine(u, v), 0.9746318461970762, 1e-12);
  EXPECT_NEAR(cosine(u, u), 1.0, 1e-15);
  EXPECT_NEAR(cosine(Vector{1, 0}, Vector{0, 1}), 0.0, 1e-15);
  EXPECT_NEAR(cosine(Vector{1, 0}, Vector{-1, 0}), -1.0, 1e-15);
  EXPECT_DOUBLE_EQ(cosine(Vector{0, 0}, Vector{0, 1}), 0.0);
  EXPECT_THROW(cosine(Vector{0, 0}, Vector{0, 0}), ValidationError);
  EXPECT_THROW(cosine(Vector{1, 2}, Vector{1, 2, 3}), ValidationError);
}

TEST(DecodeConfig, DefaultsAndRoundTrip) {
  const DecodeConfig d;
  EXPECT_EQ(d.beam_size, 5u);
  EXPECT_DOUBLE_EQ(d.length_penalty, 0.6);
  EXPECT_EQ(d.max_len, 32u);
  EXPECT_EQ(d.min_len, 1u);
  EXPECT_TRUE(d.early_stop);
  EXPECT_EQ(decode_config_from_json(Json::parse(to_json(d).dump())), d);
  EXPECT_THROW(decode_config_from_json(Json{{"beam_size", 0}}), ValidationError);
  EXPECT_THROW(decode_config_from_json(Json{{"min_len", 40}, {"max_len", 32}}), ValidationError);
}

TEST(Registry, UnknownKindListsKnownKinds) {
  try {
    load_provider(Json{{"kind", "xyz"}});
    FAIL();
  } catch (const RegistryError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("xyz"), std::string::npos);
    for (const auto& k : known_kinds()) EXPECT_NE(msg.find(k), std::string::npos) << k;
  }
  EXPECT_THROW(load_provider(Json{{"seed", 1}}), ParseError);
  EXPECT_THROW(load_scorer(Json{{"kind", "echo-generator"}}), RegistryError);
}

TEST(StubEmbedder, TableLookupAndErrors) {
  const auto e = load_embedder(Json::parse(R"({"kind":"stub-embedder","table":{"dog":[1,0],"cat":[0.5,0.5]}})"));
  EXPECT_EQ(e->dimension(), 2u);
  EXPECT_EQ(e->embed("Dog"), (Vector{1, 0}));
  EXPECT_THROW(e->embed("bird"), ProviderError);
  const std::vector<std::string> batch{"dog", "cat"};
  EXPECT_EQ(e->embed_batch(batch).size(), 2u);
  EXPECT_THROW(load_embedder(Json::parse(R"({"kind":"stub-embedder","table":{"a":[1],"b":[1,2]}})")),
               ValidationError);
}

TEST(HashProviders, PureFunctionsOfConfigAndInput) {
  const Json cfg = {{"kind", "hash-ppl"}, {"seed", 7}};
  const auto a = load_scorer(cfg);
  const auto b = load_scorer(cfg);
  const auto c = load_scorer(Json{{"kind", "hash-ppl"}, {"seed", 8}});
  for (const std::string s : {"a dog runs", "", "the cat sat on the mat"}) {
    const double p = a->ppl(s);
    EXPECT_EQ(p, b->ppl(s));
    EXPECT_EQ(p, a->ppl(s));
    EXPECT_GT(p, 1.0 - 1e-12);
    EXPECT_LE(p, 100.0);
  }
  EXPECT_NE(a->ppl("a dog runs"), c->ppl("a dog runs"));
  const auto h = load_embedder(Json{{"kind", "hash-embedder"}, {"dim", 8}, {"seed", 3}});
  EXPECT_EQ(h->embed("tree"), h->embed("tree"));
  EXPECT_EQ(h->embed("tree").size(), 8u);
  const auto t = load_scorer(Json::parse(R"({"kind":"hash-ppl","table":{"x y":3.5}})"));
  EXPECT_DOUBLE_EQ(t->ppl("x y"), 3.5);
}

TEST(StubAttention, RowsNormalizedAndPiecesAligned) {
  const auto p = load_attention(
      Json::parse(R"({"kind":"stub-attention","heads":2,"split_long":4,"weights":{"frisbee":3.0}})"));
  const auto a = p->attend("A dog catches a frisbee.");
  EXPECT_EQ(a.words, (std::vector<std::string>{"A", "dog", "catches", "a", "frisbee"}));
  ASSERT_EQ(a.pieces.size(), 7u);
  EXPECT_EQ(a.pieces[2], "catc");
  EXPECT_EQ(a.pieces[3], "##hes");
  EXPECT_EQ(a.word_of_piece, (std::vector<std::size_t>{0, 1, 2, 2, 3, 4, 4}));
  for (std::size_t h = 0; h < a.heads; ++h) {
    for (std::size_t i = 0; i < a.positions(); ++i) {
      double sum = 0;
      for (std::size_t j = 0; j < a.positions(); ++j) sum += a.at(h, i, j);
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
  EXPECT_NEAR(a.at(0, 0, 5) + a.at(0, 0, 6), 3.0 / 7.0, 1e-12);
}

TEST(NormalizeAttention, RescalesSmallDriftRejectsLarge) {
  Attention a{{"a", "b"}, {"a", "b"}, {0, 1}, 1, {0.50003, 0.5, 0.25, 0.75}};
  normalize_attention(a);
  EXPECT_NEAR(a.at(0, 0, 0) + a.at(0, 0, 1), 1.0, 1e-15);
  Attention bad{{"a", "b"}, {"a", "b"}, {0, 1}, 1, {0.6, 0.5, 0.25, 0.75}};
  EXPECT_THROW(normalize_attention(bad), ProviderError);
  Attention neg{{"a", "b"}, {"a", "b"}, {0, 1}, 1, {1.5, -0.5, 0.25, 0.75}};
  EXPECT_THROW(normalize_attention(neg), ProviderError);
}

TEST(EchoProviders, InfillAndGenerate) {
  const auto inf = load_infiller(Json{{"kind", "echo-infiller"}});
  EXPECT_EQ(inf->infill("<mask> dog <mask> frisbee <mask>"), "dog frisbee");
  const auto inf2 = load_infiller(Json{{"kind", "echo-infiller"}, {"fill", {"the", "a"}}});
  EXPECT_EQ(inf2->infill("<mask> dog <mask> frisbee <mask>"), "the dog a frisbee the");
  EXPECT_THROW(inf->infill("<mask> <mask>"), ProviderError);

  const auto gen = load_generator(Json{{"kind", "echo-generator"}});
  DecodeConfig d;
  d.max_len = 3;
  EXPECT_EQ(gen->generate("dog runs <s> in the park", d), "dog runs in");
  d.max_len = 6;
  d.min_len = 5;
  EXPECT_EQ(gen->generate("dog <s> runs", d), "dog runs dog runs dog");

  const auto look = load_generator(Json::parse(R"({"kind":"lookup-generator","table":{"a":"b"}})"));
  EXPECT_EQ(look->generate("a", {}), "b");
  EXPECT_THROW(look->generate("c", {}), ProviderError);
}

TEST(EffectiveWorkers, HonoursContract) {
  const auto s = load_scorer(Json{{"kind", "hash-ppl"}});
  EXPECT_EQ(effective_workers(*s, 8), 8u);
  EXPECT_EQ(effective_workers(*s, 0), 1u);
  const auto h = load_scorer(Json{{"kind", "http-ppl"}, {"endpoint", "http://127.0.0.1:1"}, {"max_in_flight", 2}});
  EXPECT_EQ(effective_workers(*h, 8), 2u);
}

TEST(HttpProviders, UnreachableBackendIsConnectionErrorWithAdvice) {
  const auto p = load_scorer(Json{{"kind", "http-ppl"}, {"endpoint", "http://127.0.0.1:1"}, {"timeout_s", 2}});
  try {
    p->ppl("hello");
    FAIL();
  } catch (const ConnectionError& e) {
    EXPECT_NE(std::string(e.what()).find("retry"), std::string::npos);
  }
  EXPECT_THROW(load_scorer(Json{{"kind", "http-ppl"}}), ValidationError);
}

TEST(HttpProviders, RoundTripAgainstLocalServer) {
  httplib::Server srv;
  srv.Post("/ppl", [](const httplib::Request& req, httplib::Response& res) {
    const auto body = Json::parse(req.body);
    Json out = {{"ppl", Json::array()}};
    for (const auto& t : body.at("texts")) out["ppl"].push_back(1.0 + static_cast<double>(t.get<std::string>().size()));
    res.set_content(out.dump(), "application/json");
  });
  srv.Post("/generate", [](const httplib::Request& req, httplib::Response& res) {
    const auto body = Json::parse(req.body);
    Json out = {{"outputs", Json::array()}};
    for (const auto& t : body.at("inputs")) {
      out["outputs"].push_back(t.get<std::string>() + "|" + std::to_string(body.at("decode").at("beam_size").get<int>()));
    }
    res.set_content(out.dump(), "application/json");
  });
  srv.Post("/attend", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"words":["a","b"],"pieces":["a","b"],"word_index":[0,1],"attention":[[[0.5,0.5],[0.2,0.8]]]})",
                    "application/json");
  });
  const int port = srv.bind_to_any_port("127.0.0.1");
  std::thread t([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  const std::string ep = "http://127.0.0.1:" + std::to_string(port);

  const auto ppl = load_scorer(Json{{"kind", "http-ppl"}, {"endpoint", ep}});
  EXPECT_DOUBLE_EQ(ppl->ppl("abc"), 4.0);
  const auto gen = load_generator(Json{{"kind", "http-generator"}, {"endpoint", "http://127.0.0.1:1"}});
  ::setenv("C2T_ENDPOINT_HTTP_GENERATOR", ep.c_str(), 1);
  const auto gen2 = load_generator(Json{{"kind", "http-generator"}, {"endpoint", "http://127.0.0.1:1"}});
  ::unsetenv("C2T_ENDPOINT_HTTP_GENERATOR");
  EXPECT_EQ(gen2->generate("x", {}), "x|5");
  EXPECT_EQ(gen2->config().at("endpoint"), ep);
  const auto att = load_attention(Json{{"kind", "http-attention"}, {"endpoint", ep}});
  EXPECT_DOUBLE_EQ(att->attend("a b").at(0, 1, 1), 0.8);
  const auto miss = load_infiller(Json{{"kind", "http-infiller"}, {"endpoint", ep}});
  EXPECT_THROW(miss->infill("<mask> a"), ProviderError);

  srv.stop();
  t.join();
}

}  // namespace
}  // namespace c2t::providers
