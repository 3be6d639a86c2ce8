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

#include "c2t/keyphrase/keyphrase.hpp"

#include <spdlog/spdlog.h>

#include "c2t/common/error.hpp"
#include "c2t/common/parallel.hpp"
#include "c2t/common/text.hpp"
#include "c2t/evaluation/coverage.hpp"

namespace c2t::keyphrase {

std::string Keyphrase::text() const { return text::join(tokens, " "); }

void ExtractionConfig::validate() const {
  if (max_n < 2) throw ValidationError("max_n must be at least 2");
  if (max_phrases < 1) throw ValidationError("max_phrases must be at least 1");
  if (!(dedup_threshold > 0.0 && dedup_threshold <= 1.0)) throw ValidationError("dedup_threshold must lie in (0, 1]");
}

ExtractionConfig extraction_config_from_json(const Json& j) {
  ExtractionConfig c;
  if (!j.is_object()) throw ParseError("keyphrase config must be an object");
  try {
    c.max_n = j.value("max_n", c.max_n);
    c.max_phrases = j.value("max_phrases", c.max_phrases);
    c.dedup_threshold = j.value("dedup_threshold", c.dedup_threshold);
    c.seed = j.value("seed", c.seed);
    if (j.contains("stopwords")) {
      c.stopwords.clear();
      for (const auto& w : j.at("stopwords")) c.stopwords.insert(text::to_lower(w.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("keyphrase config: ") + e.what());
  }
  c.validate();
  return c;
}

OrderedJson to_json(const ExtractionConfig& c) {
  return {{"max_n", c.max_n}, {"max_phrases", c.max_phrases}, {"dedup_threshold", c.dedup_threshold}, {"seed", c.seed}};
}

std::vector<Keyphrase> extract_keyphrases(std::string_view source, const ExtractionConfig& config) {
  config.validate();
  const auto tokens = text::tokenize(source);
  std::size_t n_words = 0;
  for (const auto& t : tokens) n_words += t.punct ? 0 : 1;
  if (n_words < 2) return {};

  const auto candidates = score_candidates(tokens, {config.max_n, &config.stopwords});
  std::vector<Keyphrase> kept;
  std::vector<std::string> kept_keys;
  for (const auto& c : candidates) {
    if (kept.size() >= config.max_phrases) break;
    if (c.tokens.size() < 2) continue;
    bool reject = false;
    for (std::size_t i = 0; i < kept.size() && !reject; ++i) {
      reject = kept[i].span.overlaps(c.span) || levenshtein_similarity(kept_keys[i], c.key) >= config.dedup_threshold;
    }
    if (reject) continue;
    kept.push_back({c.tokens, c.span, c.score});
    kept_keys.push_back(c.key);
  }
  return kept;
}

std::string_view origin_name(Origin o) { return o == Origin::kReference ? "reference" : "baseline_generation"; }

Origin origin_from_string(std::string_view s) {
  if (s == "reference") return Origin::kReference;
  if (s == "baseline_generation") return Origin::kBaselineGeneration;
  throw ValidationError("unknown origin '" + std::string(s) + "'");
}

OrderedJson to_json(const RecombinedInput& r) {
  return {{"id", r.id}, {"elements", r.elements}, {"origin", origin_name(r.origin)}};
}

RecombinedInput recombined_from_json(const Json& j, std::size_t line) {
  const std::string where = line ? " (line " + std::to_string(line) + ")" : "";
  RecombinedInput r;
  try {
    r.id = j.at("id").get<std::string>();
    r.elements = j.at("elements").get<std::vector<std::string>>();
    r.origin = origin_from_string(j.value("origin", std::string("reference")));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("recombined input" + where + ": " + e.what());
  }
  if (r.elements.empty()) throw ValidationError("recombined input '" + r.id + "' has no elements" + where);
  return r;
}

RecombinedInput build_recombined_input(const corpus::Example& example, std::string_view source, Origin origin,
                                       const ExtractionConfig& config) {
  RecombinedInput out{example.id, {}, origin};
  if (!text::trim(source).empty()) {
    for (const auto& k : extract_keyphrases(source, config)) out.elements.push_back(k.text());
  }
  const auto& concepts = example.concepts.concepts();
  if (out.elements.empty()) {
    out.elements = concepts;
    return out;
  }
  const auto covered = evaluation::covered_concepts(concepts, text::join(out.elements, " "));
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    if (!covered[i]) out.elements.push_back(concepts[i]);
  }
  return out;
}

std::vector<RecombinedInput> build_recombined_split(std::span<const corpus::Example> examples,
                                                    const std::map<std::string, std::string>& sources, Origin origin,
                                                    const ExtractionConfig& config, std::size_t workers) {
  config.validate();
  for (const auto& e : examples) {
    if (!sources.contains(e.id)) throw LookupError("no source text for example '" + e.id + "'");
  }
  std::vector<RecombinedInput> out(examples.size());
  parallel_for(examples.size(), workers, [&](std::size_t i) {
    out[i] = build_recombined_input(examples[i], sources.at(examples[i].id), origin, config);
  });
  return out;
}

std::vector<RecombinedInput> load_recombined(const std::filesystem::path& path) {
  std::vector<RecombinedInput> out;
  jsonl::for_each(path, [&](const Json& j, std::size_t line) { out.push_back(recombined_from_json(j, line)); });
  return out;
}

void write_recombined(const std::filesystem::path& path, std::span<const RecombinedInput> inputs) {
  jsonl::Writer w(path);
  for (const auto& r : inputs) w.append(to_json(r));
  w.commit();
}

}  // namespace c2t::keyphrase
