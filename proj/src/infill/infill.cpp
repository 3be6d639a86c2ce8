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

#include "c2t/infill/infill.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>
#include <set>

#include "c2t/common/error.hpp"
#include "c2t/common/parallel.hpp"
#include "c2t/common/random.hpp"
#include "c2t/common/text.hpp"

namespace c2t::infill {
namespace {

std::vector<std::string> permuted(std::span<const std::string> elements, const Permutation& p) {
  std::vector<std::string> out;
  out.reserve(p.size());
  for (std::size_t k : p) {
    if (k >= elements.size()) throw ValidationError("permutation index out of range");
    out.push_back(elements[k]);
  }
  return out;
}

bool valid_ppl(double p) { return std::isfinite(p) && p > 0.0; }

}  // namespace

void InfillConfig::validate() const {
  if (max_perms < 1) throw ValidationError("max_perms must be at least 1");
  if (keep_top < 1) throw ValidationError("keep_top must be at least 1");
  if (keep_top > max_perms) throw ValidationError("keep_top must not exceed max_perms");
}

InfillConfig infill_config_from_json(const Json& j) {
  InfillConfig c;
  if (!j.is_object()) throw ParseError("infill config must be an object");
  try {
    c.max_perms = j.value("max_perms", c.max_perms);
    c.keep_top = j.value("keep_top", c.keep_top);
    c.enumeration_seed = j.value("enumeration_seed", c.enumeration_seed);
    c.postprocess = j.value("postprocess", c.postprocess);
    c.workers = j.value("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("infill config: ") + e.what());
  }
  c.validate();
  return c;
}

OrderedJson to_json(const InfillConfig& c) {
  return {{"max_perms", c.max_perms},
          {"keep_top", c.keep_top},
          {"enumeration_seed", c.enumeration_seed},
          {"postprocess", c.postprocess}};
}

std::string render_template(std::span<const std::string> elements) {
  std::string out(providers::kMaskToken);
  for (const auto& e : elements) {
    out += ' ';
    out += e;
    out += ' ';
    out += providers::kMaskToken;
  }
  return out;
}

bool enumerates_exhaustively(std::size_t n, std::size_t max_perms) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    if (f > max_perms) return false;
  }
  return true;
}

std::vector<Permutation> enumerate_permutations(std::size_t n, std::size_t max_perms, std::uint64_t seed) {
  if (n == 0) throw ValidationError("cannot permute an empty element list");
  if (max_perms == 0) throw ValidationError("max_perms must be at least 1");
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<Permutation> out;
  if (enumerates_exhaustively(n, max_perms)) {
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }
  Rng rng(seed);
  std::set<Permutation> seen;
  while (out.size() < max_perms) {
    Permutation q = p;
    rng.shuffle(std::span<std::size_t>(q));
    if (seen.insert(q).second) out.push_back(std::move(q));
  }
  return out;
}

std::vector<InfillCandidate> rank_permutations(std::span<const std::string> elements,
                                               std::span<const Permutation> permutations,
                                               const providers::PerplexityScorer& scorer, const InfillConfig& config) {
  config.validate();
  std::vector<std::optional<double>> scores(permutations.size());
  std::vector<std::string> errors(permutations.size());
  parallel_for(permutations.size(), providers::effective_workers(scorer, config.workers), [&](std::size_t i) {
    try {
      const double p = scorer.ppl(text::join(permuted(elements, permutations[i]), " "));
      if (!valid_ppl(p)) throw ProviderError("scorer returned a non-positive or non-finite perplexity");
      scores[i] = p;
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  std::vector<InfillCandidate> out;
  std::string last_error;
  for (std::size_t i = 0; i < permutations.size(); ++i) {
    if (scores[i]) {
      out.push_back({permutations[i], *scores[i], std::nullopt, std::nullopt});
    } else {
      spdlog::warn("dropping permutation {}: {}", i, errors[i]);
      last_error = errors[i];
    }
  }
  if (out.empty() && !permutations.empty()) throw ProviderError("every permutation failed to score: " + last_error);
  std::sort(out.begin(), out.end(), [](const InfillCandidate& a, const InfillCandidate& b) {
    if (a.prompt_ppl != b.prompt_ppl) return a.prompt_ppl < b.prompt_ppl;
    return a.permutation < b.permutation;
  });
  if (out.size() > config.keep_top) out.resize(config.keep_top);
  return out;
}

std::string postprocess(std::string_view input) {
  static const std::regex url(R"((?:https?://|www\.)\S+)", std::regex::icase);
  static const std::regex agency(
      R"([\(\[]\s*(?:Reuters|AP|AFP|CNN|BBC|UPI|Xinhua|Bloomberg|dpa|ANI|IANS|PTI|TASS|NBC|ABC|CBS)\s*[\)\]])",
      std::regex::icase);
  std::string cur(input);
  while (true) {
    std::string next = cur;
    if (const auto pos = next.find("pic.twitter"); pos != std::string::npos) next.resize(pos);
    next = std::regex_replace(next, url, " ");
    next = std::regex_replace(next, agency, " ");
    next = text::collapse_whitespace(next);
    if (next == cur) return next;
    cur = std::move(next);
  }
}

InfillOutcome infill(std::span<const std::string> elements, std::span<const InfillCandidate> candidates,
                     const providers::MaskInfiller& infiller, const providers::PerplexityScorer& scorer,
                     const InfillConfig& config) {
  if (candidates.empty()) throw ValidationError("infill needs at least one candidate");
  InfillOutcome result{{candidates.begin(), candidates.end()}, 0};
  const std::size_t workers =
      std::min(providers::effective_workers(infiller, config.workers), providers::effective_workers(scorer, config.workers));
  std::vector<std::string> errors(candidates.size());
  parallel_for(candidates.size(), workers, [&](std::size_t i) {
    auto& c = result.candidates[i];
    c.output.reset();
    c.output_ppl.reset();
    try {
      const auto parts = permuted(elements, c.permutation);
      std::string out = infiller.infill(render_template(parts));
      if (config.postprocess) out = postprocess(out);
      if (text::trim(out).empty()) throw ProviderError("infiller produced an empty output");
      const double p = scorer.ppl(out);
      if (!valid_ppl(p)) throw ProviderError("scorer returned a non-positive or non-finite perplexity");
      for (const auto& e : parts) {
        if (out.find(e) == std::string::npos) spdlog::warn("infilled output does not keep element '{}' intact", e);
      }
      c.output = std::move(out);
      c.output_ppl = p;
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  std::optional<std::size_t> best;
  std::string last_error;
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const auto& c = result.candidates[i];
    if (!c.output_ppl) {
      spdlog::warn("skipping candidate {}: {}", i, errors[i]);
      last_error = errors[i];
      continue;
    }
    if (!best || *c.output_ppl < *result.candidates[*best].output_ppl) best = i;
  }
  if (!best) throw ProviderError("every infill candidate failed: " + last_error);
  result.best = *best;
  return result;
}

OrderedJson to_json(const MiRecord& r) {
  OrderedJson cands = OrderedJson::array();
  for (const auto& c : r.candidates) {
    OrderedJson j = {{"perm", c.permutation}, {"prompt_ppl", c.prompt_ppl}};
    j["output"] = c.output ? OrderedJson(*c.output) : OrderedJson(nullptr);
    j["output_ppl"] = c.output_ppl ? OrderedJson(*c.output_ppl) : OrderedJson(nullptr);
    cands.push_back(std::move(j));
  }
  return {{"id", r.id},
          {"best", r.best},
          {"best_ppl", r.best_ppl},
          {"candidates", cands},
          {"seed", r.seed},
          {"enumeration", r.exhaustive ? "exhaustive" : "sampled"}};
}

MiRecord mi_from_json(const Json& j, std::size_t line) {
  MiRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.best = j.at("best").get<std::string>();
    r.best_ppl = j.at("best_ppl").get<double>();
    r.seed = j.value("seed", std::uint64_t{0});
    r.exhaustive = j.value("enumeration", std::string("exhaustive")) == "exhaustive";
    for (const auto& c : j.at("candidates")) {
      InfillCandidate ic{c.at("perm").get<Permutation>(), c.at("prompt_ppl").get<double>(), std::nullopt, std::nullopt};
      if (c.contains("output") && !c.at("output").is_null()) ic.output = c.at("output").get<std::string>();
      if (c.contains("output_ppl") && !c.at("output_ppl").is_null()) ic.output_ppl = c.at("output_ppl").get<double>();
      r.candidates.push_back(std::move(ic));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("MI record" + (line ? " (line " + std::to_string(line) + ")" : std::string()) + ": " + e.what());
  }
  return r;
}

MiRecord run_mi(const keyphrase::RecombinedInput& input, const providers::MaskInfiller& infiller,
                const providers::PerplexityScorer& scorer, const InfillConfig& config) {
  config.validate();
  return with_context("input '" + input.id + "'", [&] {
    MiRecord r;
    r.id = input.id;
    r.seed = derive_seed(config.enumeration_seed, input.id);
    r.exhaustive = enumerates_exhaustively(input.elements.size(), config.max_perms);
    const auto perms = enumerate_permutations(input.elements.size(), config.max_perms, r.seed);
    const auto ranked = rank_permutations(input.elements, perms, scorer, config);
    auto outcome = infill(input.elements, ranked, infiller, scorer, config);
    r.best = *outcome.candidates[outcome.best].output;
    r.best_ppl = *outcome.candidates[outcome.best].output_ppl;
    r.candidates = std::move(outcome.candidates);
    return r;
  });
}

std::vector<MiRecord> run_mi_split(std::span<const keyphrase::RecombinedInput> inputs,
                                   const providers::MaskInfiller& infiller, const providers::PerplexityScorer& scorer,
                                   const InfillConfig& config) {
  config.validate();
  // Parallelism is per example; each example runs its provider calls serially.
  InfillConfig inner = config;
  inner.workers = 1;
  const std::size_t workers =
      std::min(providers::effective_workers(infiller, config.workers), providers::effective_workers(scorer, config.workers));
  std::vector<MiRecord> out(inputs.size());
  parallel_for(inputs.size(), workers, [&](std::size_t i) { out[i] = run_mi(inputs[i], infiller, scorer, inner); });
  return out;
}

void write_mi(const std::filesystem::path& path, std::span<const MiRecord> records) {
  jsonl::Writer w(path);
  for (const auto& r : records) w.append(to_json(r));
  w.commit();
}

std::vector<MiRecord> load_mi(const std::filesystem::path& path) {
  std::vector<MiRecord> out;
  jsonl::for_each(path, [&](const Json& j, std::size_t line) { out.push_back(mi_from_json(j, line)); });
  return out;
}

}  // namespace c2t::infill
