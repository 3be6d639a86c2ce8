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

#include <httplib.h>

#include <cstdlib>

#include "c2t/common/error.hpp"
#include "factories.hpp"

namespace c2t::providers::detail {
namespace {

// C2T_ENDPOINT_HTTP_PPL and friends take precedence over "endpoint".
std::string env_name(std::string kind) {
  for (auto& c : kind) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return "C2T_ENDPOINT_" + kind;
}

Json resolve_endpoint(Json c) {
  const std::string var = env_name(c.at("kind").get<std::string>());
  if (const char* env = std::getenv(var.c_str()); env != nullptr && *env != '\0') c["endpoint"] = env;
  if (!c.contains("endpoint") || !c.at("endpoint").is_string() || c.at("endpoint").get<std::string>().empty()) {
    throw ValidationError("provider '" + c.at("kind").get<std::string>() + "' needs an \"endpoint\" (or " + var + ")");
  }
  return c;
}

// JSON-over-HTTP client. A fresh connection per request keeps instances
// safe to share across worker threads.
class HttpBackend {
 public:
  explicit HttpBackend(const Json& c)
      : kind_(c.at("kind")),
        endpoint_(c.at("endpoint")),
        timeout_s_(c.value("timeout_s", 60)),
        max_in_flight_(c.value("max_in_flight", std::size_t{4})),
        model_(c.value("model", std::string())) {}

  Json post(const std::string& path, Json body) const {
    if (!model_.empty()) body["model"] = model_;
    httplib::Client cli(endpoint_);
    cli.set_connection_timeout(timeout_s_);
    cli.set_read_timeout(timeout_s_);
    cli.set_write_timeout(timeout_s_);
    auto res = cli.Post(path, body.dump(), "application/json");
    if (!res) {
      throw ConnectionError(kind_ + ": could not reach backend at " + endpoint_ + path + " (" +
                            httplib::to_string(res.error()) + "); start the model server or set " + env_name(kind_) +
                            ", then retry");
    }
    if (res->status != 200) {
      throw ProviderError(kind_ + ": backend returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }
    try {
      return Json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(kind_ + ": malformed backend response: " + e.what());
    }
  }

  template <typename T>
  std::vector<T> field_list(const Json& response, const char* field, std::size_t expected) const {
    try {
      auto out = response.at(field).get<std::vector<T>>();
      if (out.size() != expected) throw ProviderError(kind_ + ": backend returned the wrong number of results");
      return out;
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(kind_ + ": backend response lacks a valid \"" + field + "\": " + e.what());
    }
  }

  std::size_t max_in_flight() const { return max_in_flight_; }
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
  std::string endpoint_;
  int timeout_s_;
  std::size_t max_in_flight_;
  std::string model_;
};

std::vector<std::string> one(std::string_view s) { return {std::string(s)}; }

class HttpEmbedder final : public ContextualEmbedder {
 public:
  explicit HttpEmbedder(const Json& c) : ContextualEmbedder(c), http_(c), dim_(c.value("dim", std::size_t{0})) {}
  std::size_t max_in_flight() const override { return http_.max_in_flight(); }
  std::size_t dimension() const override { return dim_; }
  Vector embed(std::string_view text) const override { return embed_batch(one(text)).front(); }
  std::vector<Vector> embed_batch(std::span<const std::string> texts) const override {
    const Json body = {{"texts", std::vector<std::string>(texts.begin(), texts.end())}};
    return http_.field_list<Vector>(http_.post("/embed", body), "vectors", texts.size());
  }

 private:
  HttpBackend http_;
  std::size_t dim_;
};

class HttpAttention final : public AttentionProvider {
 public:
  explicit HttpAttention(const Json& c) : AttentionProvider(c), http_(c) {}
  std::size_t max_in_flight() const override { return http_.max_in_flight(); }
  Attention attend(std::string_view sentence) const override {
    const Json r = http_.post("/attend", {{"text", std::string(sentence)}});
    Attention a;
    try {
      a.words = r.at("words").get<std::vector<std::string>>();
      a.pieces = r.at("pieces").get<std::vector<std::string>>();
      a.word_of_piece = r.at("word_index").get<std::vector<std::size_t>>();
      const auto tensor = r.at("attention").get<std::vector<std::vector<std::vector<double>>>>();
      a.heads = tensor.size();
      for (const auto& head : tensor) {
        if (head.size() != a.pieces.size()) throw ProviderError(http_.kind() + ": attention rows do not match pieces");
        for (const auto& row : head) {
          if (row.size() != a.pieces.size()) throw ProviderError(http_.kind() + ": attention row has wrong length");
          a.weights.insert(a.weights.end(), row.begin(), row.end());
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(http_.kind() + ": malformed attention response: " + e.what());
    }
    normalize_attention(a);
    return a;
  }

 private:
  HttpBackend http_;
};

class HttpPpl final : public PerplexityScorer {
 public:
  explicit HttpPpl(const Json& c) : PerplexityScorer(c), http_(c) {}
  std::size_t max_in_flight() const override { return http_.max_in_flight(); }
  double ppl(std::string_view text) const override { return ppl_batch(one(text)).front(); }
  std::vector<double> ppl_batch(std::span<const std::string> texts) const override {
    const Json body = {{"texts", std::vector<std::string>(texts.begin(), texts.end())}};
    auto out = http_.field_list<double>(http_.post("/ppl", body), "ppl", texts.size());
    for (double p : out) {
      if (!(p > 0.0) || !std::isfinite(p)) throw ProviderError(http_.kind() + ": perplexity must be positive and finite");
    }
    return out;
  }

 private:
  HttpBackend http_;
};

class HttpInfiller final : public MaskInfiller {
 public:
  explicit HttpInfiller(const Json& c) : MaskInfiller(c), http_(c) {}
  std::size_t max_in_flight() const override { return http_.max_in_flight(); }
  std::string infill(std::string_view t) const override { return infill_batch(one(t)).front(); }
  std::vector<std::string> infill_batch(std::span<const std::string> templates) const override {
    const Json body = {{"templates", std::vector<std::string>(templates.begin(), templates.end())}};
    return http_.field_list<std::string>(http_.post("/infill", body), "outputs", templates.size());
  }

 private:
  HttpBackend http_;
};

class HttpGenerator final : public SequenceGenerator {
 public:
  explicit HttpGenerator(const Json& c) : SequenceGenerator(c), http_(c) {}
  std::size_t max_in_flight() const override { return http_.max_in_flight(); }
  std::string generate(std::string_view input, const DecodeConfig& d) const override {
    return generate_batch(one(input), d).front();
  }
  std::vector<std::string> generate_batch(std::span<const std::string> inputs, const DecodeConfig& d) const override {
    d.validate();
    const Json body = {{"inputs", std::vector<std::string>(inputs.begin(), inputs.end())},
                       {"decode", Json::parse(to_json(d).dump())}};
    return http_.field_list<std::string>(http_.post("/generate", body), "outputs", inputs.size());
  }

 private:
  HttpBackend http_;
};

}  // namespace

std::shared_ptr<Provider> make_http_embedder(const Json& c) { return std::make_shared<HttpEmbedder>(resolve_endpoint(c)); }
std::shared_ptr<Provider> make_http_attention(const Json& c) { return std::make_shared<HttpAttention>(resolve_endpoint(c)); }
std::shared_ptr<Provider> make_http_ppl(const Json& c) { return std::make_shared<HttpPpl>(resolve_endpoint(c)); }
std::shared_ptr<Provider> make_http_infiller(const Json& c) { return std::make_shared<HttpInfiller>(resolve_endpoint(c)); }
std::shared_ptr<Provider> make_http_generator(const Json& c) { return std::make_shared<HttpGenerator>(resolve_endpoint(c)); }

}  // namespace c2t::providers::detail
