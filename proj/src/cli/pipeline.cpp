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

#include "c2t/cli/pipeline.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "c2t/augment/augment.hpp"
#include "c2t/cli/manifest.hpp"
#include "c2t/common/error.hpp"
#include "c2t/common/parallel.hpp"
#include "c2t/common/text.hpp"
#include "c2t/infill/infill.hpp"
#include "c2t/recombine/recombine.hpp"

namespace c2t::cli {
namespace fs = std::filesystem;

namespace {

OrderedJson generation_json(const corpus::Generation& g) { return {{"id", g.id}, {"output", g.text}}; }

// Processes `inputs` chunk by chunk, streaming each finished chunk to
// `path` through a quarantine file. The file is committed only when every
// chunk succeeded.
template <typename Out, typename In, typename Process, typename ToJson>
std::vector<Out> stream_stage(std::string_view stage, const fs::path& path, std::span<const In> inputs,
                              std::size_t chunk, Process&& process, ToJson&& to_record) {
  jsonl::Writer writer(path);
  std::vector<Out> all;
  all.reserve(inputs.size());
  with_context(fmt::format("stage {}", stage), [&] {
    for (std::size_t begin = 0; begin < inputs.size(); begin += chunk) {
      const auto part = inputs.subspan(begin, std::min(chunk, inputs.size() - begin));
      std::vector<Out> done = process(part);
      for (auto& o : done) {
        writer.append(to_record(o));
        all.push_back(std::move(o));
      }
    }
  });
  writer.commit();
  spdlog::info("stage {}: wrote {} records to {}", stage, all.size(), path.string());
  return all;
}

OrderedJson provider_identity(const providers::Provider& p) { return OrderedJson::parse(p.config().dump()); }

}  // namespace

std::string_view pipeline_name(PipelineKind k) {
  switch (k) {
    case PipelineKind::kKw:
      return "kw";
    case PipelineKind::kAtt:
      return "att";
    case PipelineKind::kP2t:
      return "p2t";
    case PipelineKind::kMi:
      return "mi";
    case PipelineKind::kBaselineEval:
      return "baseline-eval";
  }
  return "?";
}

PipelineKind pipeline_from_string(std::string_view s) {
  for (auto k : {PipelineKind::kKw, PipelineKind::kAtt, PipelineKind::kP2t, PipelineKind::kMi,
                 PipelineKind::kBaselineEval}) {
    if (s == pipeline_name(k)) return k;
  }
  throw ValidationError(fmt::format("unknown pipeline '{}' (expected kw, att, p2t, mi or baseline-eval)", s));
}

std::map<std::string, std::string> extraction_sources(std::span<const corpus::Example> examples,
                                                      const std::optional<fs::path>& sources,
                                                      keyphrase::Origin& origin) {
  std::map<std::string, std::string> out;
  if (sources) {
    origin = keyphrase::Origin::kBaselineGeneration;
    for (auto& g : corpus::load_generations(*sources)) out.emplace(std::move(g.id), std::move(g.text));
    return out;
  }
  origin = keyphrase::Origin::kReference;
  for (const auto& e : examples) {
    if (!e.references.empty()) out.emplace(e.id, e.references.front());
  }
  return out;
}

std::vector<corpus::Generation> generate_all(std::span<const std::string> ids, std::span<const std::string> inputs,
                                             const providers::SequenceGenerator& generator,
                                             const providers::DecodeConfig& decode, std::size_t workers) {
  std::vector<corpus::Generation> out(ids.size());
  parallel_for(ids.size(), providers::effective_workers(generator, workers), [&](std::size_t i) {
    out[i].id = ids[i];
    out[i].text = with_context(ids[i], [&] { return generator.generate(inputs[i], decode); });
  });
  return out;
}

namespace {

void execute(const PipelineRequest& request, const RunConfig& config, PipelineResult& result) {
  const fs::path& dir = request.out_dir;
  fs::create_directories(dir);
  ManifestBuilder manifest(manifest_path_for(dir, true), request.command);
  manifest.manifest().config = to_json(config);
  manifest.manifest().seeds = {{"seed", config.seed},
                               {"extract", config.extract.seed},
                               {"p2t", config.p2t_seed},
                               {"enumeration", config.infill.enumeration_seed}};
  manifest.manifest().config["pipeline"] = pipeline_name(request.kind);

  const auto examples = corpus::load_corpus(request.corpus);
  manifest.add_input(request.corpus);
  if (request.sources) manifest.add_input(*request.sources);
  const std::size_t chunk = 32 * std::max<std::size_t>(1, config.workers);
  const std::span<const corpus::Example> all(examples);

  auto output = [&](const std::string& name) {
    const fs::path p = dir / name;
    result.outputs.push_back(p);
    manifest.add_output(p);
    return p;
  };
  auto note_provider = [&](const std::string& role, const providers::Provider& p) {
    manifest.manifest().providers[role] = provider_identity(p);
  };

  std::vector<corpus::Generation> generations;

  auto recombine_stage = [&] {
    keyphrase::Origin origin = keyphrase::Origin::kReference;
    const auto sources = extraction_sources(examples, request.sources, origin);
    return stream_stage<keyphrase::RecombinedInput>(
        "extract", output("recombined.jsonl"), all, chunk,
        [&](std::span<const corpus::Example> part) {
          return keyphrase::build_recombined_split(part, sources, origin, config.extract, config.workers);
        },
        [](const keyphrase::RecombinedInput& r) { return keyphrase::to_json(r); });
  };

  switch (request.kind) {
    case PipelineKind::kKw:
    case PipelineKind::kAtt: {
      const auto method = request.kind == PipelineKind::kKw ? augment::Method::kKw : augment::Method::kAtt;
      augment::AugmentProviders provs;
      std::shared_ptr<providers::ContextualEmbedder> embedder;
      std::shared_ptr<providers::AttentionProvider> attention;
      if (method == augment::Method::kKw) {
        embedder = embedder_for(config);
        provs.embedder = embedder.get();
        note_provider("embedder", *embedder);
      } else {
        attention = attention_for(config);
        provs.attention = attention.get();
        note_provider("attention", *attention);
      }
      const auto augmented = stream_stage<augment::AugmentedExample>(
          "augment", output("augmented.jsonl"), all, chunk,
          [&](std::span<const corpus::Example> part) {
            auto r = augment::augment_split(part, method, config.augment.k, provs, config.augment.options);
            for (const auto& id : r.failed_ids) spdlog::warn("stage augment: {} kept without added words", id);
            return std::move(r.examples);
          },
          [](const augment::AugmentedExample& a) { return augment::to_json(a); });
      if (has_provider(config, "generator")) {
        const auto generator = generator_for(config);
        note_provider("generator", *generator);
        generations = stream_stage<corpus::Generation>(
            "generate", output("generations.jsonl"), std::span<const augment::AugmentedExample>(augmented), chunk,
            [&](std::span<const augment::AugmentedExample> part) {
              std::vector<std::string> ids, inputs;
              for (const auto& a : part) {
                ids.push_back(a.base.id);
                inputs.push_back(a.model_input());
              }
              return generate_all(ids, inputs, *generator, config.decode, config.workers);
            },
            generation_json);
      }
      break;
    }
    case PipelineKind::kP2t: {
      const auto recombined = recombine_stage();
      const std::span<const keyphrase::RecombinedInput> rec(recombined);
      const bool infer = request.sources.has_value();
      const auto records = stream_stage<recombine::P2TRecord>(
          "build-p2t", output("p2t.jsonl"), rec, chunk,
          [&](std::span<const keyphrase::RecombinedInput> part) {
            if (infer) return recombine::build_p2t_infer(part, config.p2t_seed);
            std::vector<corpus::Example> matching;
            matching.reserve(part.size());
            const auto base = static_cast<std::size_t>(part.data() - rec.data());
            for (std::size_t i = 0; i < part.size(); ++i) matching.push_back(examples[base + i]);
            return recombine::build_p2t_train(part, matching, config.p2t_seed);
          },
          [](const recombine::P2TRecord& r) { return recombine::to_json(r); });
      if (infer && has_provider(config, "generator")) {
        const auto generator = generator_for(config);
        note_provider("generator", *generator);
        generations = stream_stage<corpus::Generation>(
            "generate", output("generations.jsonl"), std::span<const recombine::P2TRecord>(records), chunk,
            [&](std::span<const recombine::P2TRecord> part) {
              return recombine::p2t_generate(part, *generator, config.decode, config.workers);
            },
            generation_json);
      }
      break;
    }
    case PipelineKind::kMi: {
      const auto recombined = recombine_stage();
      const auto infiller = infiller_for(config);
      const auto scorer = scorer_for(config);
      note_provider("infiller", *infiller);
      note_provider("scorer", *scorer);
      const auto records = stream_stage<infill::MiRecord>(
          "infill", output("mi.jsonl"), std::span<const keyphrase::RecombinedInput>(recombined), chunk,
          [&](std::span<const keyphrase::RecombinedInput> part) {
            return infill::run_mi_split(part, *infiller, *scorer, config.infill);
          },
          [](const infill::MiRecord& r) { return infill::to_json(r); });
      generations.reserve(records.size());
      for (const auto& r : records) generations.push_back({r.id, r.best});
      corpus::write_generations(output("generations.jsonl"), generations);
      break;
    }
    case PipelineKind::kBaselineEval: {
      const auto generator = generator_for(config);
      note_provider("generator", *generator);
      generations = stream_stage<corpus::Generation>(
          "generate", output("generations.jsonl"), all, chunk,
          [&](std::span<const corpus::Example> part) {
            std::vector<std::string> ids, inputs;
            for (const auto& e : part) {
              ids.push_back(e.id);
              inputs.push_back(text::join(e.concepts.concepts(), " "));
            }
            return generate_all(ids, inputs, *generator, config.decode, config.workers);
          },
          generation_json);
      break;
    }
  }

  if (request.evaluate && !generations.empty()) {
    auto report = with_context("stage evaluate", [&] { return evaluation::evaluate(examples, generations, config.evaluate); });
    evaluation::write_report(output("report.json"), report);
    result.report = std::move(report);
  }
  result.manifest = manifest.write();
  spdlog::info("{} pipeline: manifest {}", pipeline_name(request.kind), result.manifest.string());
}

}  // namespace

PipelineResult run_pipeline(const PipelineRequest& request, const RunConfig& config) {
  config.validate();
  PipelineResult result;
  try {
    execute(request, config, result);
  } catch (...) {
    // Without a manifest no artifact may stay under its final name.
    for (const auto& p : result.outputs) {
      std::error_code ec;
      if (fs::is_regular_file(p, ec)) fs::rename(p, jsonl::Writer::quarantine_path(p), ec);
    }
    throw;
  }
  return result;
}

}  // namespace c2t::cli
