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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "c2t/augment/augment.hpp"
#include "c2t/common/jsonl.hpp"
#include "c2t/evaluation/report.hpp"
#include "c2t/infill/infill.hpp"
#include "c2t/keyphrase/keyphrase.hpp"
#include "c2t/providers/providers.hpp"

namespace c2t::cli {

struct AugmentSection {
  augment::Method method = augment::Method::kKw;
  std::size_t k = 2;
  augment::AugmentOptions options;
};

// One JSON document with a section per module:
//   {"seed", "workers", "extract", "augment", "p2t", "decode", "infill",
//    "evaluate", "providers": {"embedder", "attention", "scorer",
//    "infiller", "generator"}}
// Every key is optional. Environment variables may override provider
// endpoints but never anything in this structure.
struct RunConfig {
  std::uint64_t seed = 13;
  std::size_t workers = 1;
  keyphrase::ExtractionConfig extract;
  AugmentSection augment;
  std::uint64_t p2t_seed = 13;
  providers::DecodeConfig decode;
  infill::InfillConfig infill;
  evaluation::EvaluationConfig evaluate;
  Json providers = Json::object();  // role -> provider config

  void validate() const;
};

RunConfig run_config_from_json(const Json& j);
RunConfig load_run_config(const std::filesystem::path& path);
// Normalized snapshot recorded in manifests.
OrderedJson to_json(const RunConfig& c);

// Provider for `role` ("embedder", "attention", "scorer", "infiller",
// "generator"). A missing section raises ValidationError naming the role.
std::shared_ptr<providers::ContextualEmbedder> embedder_for(const RunConfig& c);
std::shared_ptr<providers::AttentionProvider> attention_for(const RunConfig& c);
std::shared_ptr<providers::PerplexityScorer> scorer_for(const RunConfig& c);
std::shared_ptr<providers::MaskInfiller> infiller_for(const RunConfig& c);
std::shared_ptr<providers::SequenceGenerator> generator_for(const RunConfig& c);

bool has_provider(const RunConfig& c, const std::string& role);

}  // namespace c2t::cli
