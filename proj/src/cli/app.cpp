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

#include "c2t/cli/app.hpp"

#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "c2t/augment/augment.hpp"
#include "c2t/cli/config.hpp"
#include "c2t/cli/manifest.hpp"
#include "c2t/cli/pipeline.hpp"
#include "c2t/cli/sweep.hpp"
#include "c2t/cli/training.hpp"
#include "c2t/common/error.hpp"
#include "c2t/common/text.hpp"
#include "c2t/corpus/corpus.hpp"
#include "c2t/evaluation/analysis.hpp"
#include "c2t/evaluation/report.hpp"
#include "c2t/infill/infill.hpp"
#include "c2t/keyphrase/keyphrase.hpp"
#include "c2t/recombine/recombine.hpp"

namespace c2t::cli {
namespace fs = std::filesystem;

namespace {

struct Common {
  std::vector<std::string> command;
  std::string config_path;

  RunConfig config() const { return config_path.empty() ? RunConfig{} : load_run_config(config_path); }
};

// Starts a manifest for a single-file output and records the config.
ManifestBuilder file_manifest(const Common& common, const fs::path& out, const RunConfig* config) {
  ManifestBuilder m(manifest_path_for(out, false), common.command);
  if (config != nullptr) {
    m.manifest().config = to_json(*config);
    m.manifest().seeds = {{"seed", config->seed},
                          {"extract", config->extract.seed},
                          {"p2t", config->p2t_seed},
                          {"enumeration", config->infill.enumeration_seed}};
  }
  return m;
}

void emit_json(const OrderedJson& j, const std::string& out, const Common& common, const std::vector<fs::path>& inputs) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  write_file_atomic(out, j.dump(2) + "\n");
  auto m = file_manifest(common, out, nullptr);
  for (const auto& in : inputs) m.add_input(in);
  m.add_output(out);
  m.write();
}

std::optional<evaluation::MetricReport> try_load_report(const fs::path& path) {
  const auto j = OrderedJson::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("schema")) return std::nullopt;
  if (j.at("schema") != evaluation::kReportSchema) return std::nullopt;
  return evaluation::report_from_json(j);
}

void add_config_option(CLI::App* sub, Common& common) {
  sub->add_option("--config", common.config_path, "Run configuration JSON")->check(CLI::ExistingFile);
}

// ---------------------------------------------------------------- split

void setup_split(CLI::App& app, Common& common) {
  struct Opts {
    std::string corpus, out, dev_spec, test_spec;
    std::optional<std::uint64_t> seed;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("split", "Carve dev/test splits with exact per-size and sentence targets");
  sub->add_option("--corpus", opts->corpus, "Pool corpus JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", opts->out, "Output directory")->required();
  sub->add_option("--dev-spec", opts->dev_spec, "Dev split spec JSON")->check(CLI::ExistingFile);
  sub->add_option("--test-spec", opts->test_spec, "Test split spec JSON")->check(CLI::ExistingFile);
  sub->add_option("--seed", opts->seed, "Sampling seed");
  sub->callback([opts, &common] {
    auto dev = opts->dev_spec.empty() ? corpus::default_dev_spec()
                                      : corpus::split_spec_from_json(Json::parse(read_file(opts->dev_spec)));
    auto test = opts->test_spec.empty() ? corpus::default_test_spec()
                                        : corpus::split_spec_from_json(Json::parse(read_file(opts->test_spec)));
    if (opts->seed) dev.seed = test.seed = *opts->seed;
    const auto pool = corpus::load_corpus(opts->corpus);
    const auto splits = corpus::build_splits(pool, dev, test);
    const fs::path dir(opts->out);
    fs::create_directories(dir);
    ManifestBuilder m(manifest_path_for(dir, true), common.command);
    m.manifest().config = {{"dev", corpus::to_json(dev)}, {"test", corpus::to_json(test)}};
    m.manifest().seeds = {{"split", dev.seed}};
    m.add_input(opts->corpus);
    const fs::path dev_path = dir / (dev.name + ".jsonl");
    const fs::path test_path = dir / (test.name + ".jsonl");
    corpus::write_corpus(dev_path, splits.dev);
    corpus::write_corpus(test_path, splits.test);
    const OrderedJson stats = {{dev.name, corpus::to_json(corpus::split_stats(splits.dev))},
                               {test.name, corpus::to_json(corpus::split_stats(splits.test))}};
    write_file_atomic(dir / "stats.json", stats.dump(2) + "\n");
    m.add_output(dev_path);
    m.add_output(test_path);
    m.add_output(dir / "stats.json");
    m.write();
    std::cout << stats.dump(2) << "\n";
  });
}

// ---------------------------------------------------------------- extract

void setup_extract(CLI::App& app, Common& common) {
  struct Opts {
    std::string corpus, sources, out;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("extract", "Build recombined inputs: keyphrases plus restored concepts");
  sub->add_option("--corpus", opts->corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--sources", opts->sources, "Baseline generations to extract from (default: first reference)")
      ->check(CLI::ExistingFile);
  sub->add_option("--out", opts->out, "Output JSONL")->required();
  add_config_option(sub, common);
  sub->callback([opts, &common] {
    const auto config = common.config();
    const auto examples = corpus::load_corpus(opts->corpus);
    std::optional<fs::path> sources;
    if (!opts->sources.empty()) sources = opts->sources;
    keyphrase::Origin origin{};
    const auto texts = extraction_sources(examples, sources, origin);
    const auto inputs = keyphrase::build_recombined_split(examples, texts, origin, config.extract, config.workers);
    keyphrase::write_recombined(opts->out, inputs);
    auto m = file_manifest(common, opts->out, &config);
    m.add_input(opts->corpus);
    if (sources) m.add_input(*sources);
    m.add_output(opts->out);
    m.write();
    spdlog::info("extract: {} inputs -> {}", inputs.size(), opts->out);
  });
}

// ---------------------------------------------------------------- augment

void setup_augment(CLI::App& app, Common& common) {
  struct Opts {
    std::string corpus, out, method;
    std::optional<std::size_t> k;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("augment", "Add k reference words to each concept set");
  sub->add_option("--corpus", opts->corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--method", opts->method, "kw or att (default: config augment.method)");
  sub->add_option("--k", opts->k, "Words to add (1-5)");
  sub->add_option("--out", opts->out, "Output JSONL")->required();
  add_config_option(sub, common);
  sub->callback([opts, &common] {
    auto config = common.config();
    if (!opts->method.empty()) config.augment.method = augment::method_from_string(opts->method);
    if (opts->k) config.augment.k = *opts->k;
    config.validate();
    const auto examples = corpus::load_corpus(opts->corpus);
    augment::AugmentProviders provs;
    std::shared_ptr<providers::ContextualEmbedder> embedder;
    std::shared_ptr<providers::AttentionProvider> attention;
    auto m = file_manifest(common, opts->out, &config);
    if (config.augment.method == augment::Method::kKw) {
      embedder = embedder_for(config);
      provs.embedder = embedder.get();
      m.manifest().providers["embedder"] = OrderedJson::parse(embedder->config().dump());
    } else {
      attention = attention_for(config);
      provs.attention = attention.get();
      m.manifest().providers["attention"] = OrderedJson::parse(attention->config().dump());
    }
    const auto result = augment::augment_split(examples, config.augment.method, config.augment.k, provs,
                                               config.augment.options);
    for (const auto& id : result.failed_ids) spdlog::warn("augment: {} kept without added words", id);
    augment::write_augmented(opts->out, result.examples);
    m.add_input(opts->corpus);
    m.add_output(opts->out);
    m.write();
  });
}

// ---------------------------------------------------------------- build-p2t

void setup_build_p2t(CLI::App& app, Common& common) {
  struct Opts {
    std::string recombined, corpus, out, mode = "train";
    std::optional<std::uint64_t> seed;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("build-p2t", "Render recombined inputs as separator-joined P2T records");
  sub->add_option("--recombined", opts->recombined, "Recombined inputs JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--corpus", opts->corpus, "Corpus JSONL with references (train mode)")->check(CLI::ExistingFile);
  sub->add_option("--mode", opts->mode, "train or infer")->check(CLI::IsMember({"train", "infer"}));
  sub->add_option("--seed", opts->seed, "Permutation seed (default: config p2t.seed)");
  sub->add_option("--out", opts->out, "Output JSONL")->required();
  add_config_option(sub, common);
  sub->callback([opts, &common] {
    auto config = common.config();
    if (opts->seed) config.p2t_seed = *opts->seed;
    const auto inputs = keyphrase::load_recombined(opts->recombined);
    std::vector<recombine::P2TRecord> records;
    auto m = file_manifest(common, opts->out, &config);
    m.add_input(opts->recombined);
    if (opts->mode == "train") {
      if (opts->corpus.empty()) throw ValidationError("build-p2t --mode train needs --corpus for the targets");
      const auto examples = corpus::load_corpus(opts->corpus);
      records = recombine::build_p2t_train(inputs, examples, config.p2t_seed);
      m.add_input(opts->corpus);
    } else {
      records = recombine::build_p2t_infer(inputs, config.p2t_seed);
    }
    recombine::write_p2t(opts->out, records);
    m.add_output(opts->out);
    m.write();
  });
}

// ---------------------------------------------------------------- generate

std::string detect_input_kind(const fs::path& path) {
  std::string kind;
  jsonl::for_each(path, [&](const Json& j, std::size_t) {
    if (!kind.empty()) return;
    if (j.contains("input")) {
      kind = "p2t";
    } else if (j.contains("added")) {
      kind = "augmented";
    } else if (j.contains("concepts")) {
      kind = "corpus";
    } else {
      kind = "unknown";
    }
  });
  if (kind.empty() || kind == "unknown") {
    throw ValidationError(path.string() + ": cannot tell the input kind; pass --input-kind");
  }
  return kind;
}

void setup_generate(CLI::App& app, Common& common) {
  struct Opts {
    std::string input, out, kind = "auto";
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("generate", "Run the sequence generator over P2T records, augmented sets or a corpus");
  sub->add_option("--input", opts->input, "Input JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--input-kind", opts->kind, "auto, p2t, augmented or corpus")
      ->check(CLI::IsMember({"auto", "p2t", "augmented", "corpus"}));
  sub->add_option("--out", opts->out, "Output generations JSONL")->required();
  add_config_option(sub, common);
  sub->callback([opts, &common] {
    const auto config = common.config();
    const std::string kind = opts->kind == "auto" ? detect_input_kind(opts->input) : opts->kind;
    std::vector<std::string> ids, inputs;
    if (kind == "p2t") {
      for (const auto& r : recombine::load_p2t(opts->input)) {
        ids.push_back(r.id);
        inputs.push_back(r.input);
      }
    } else if (kind == "augmented") {
      for (const auto& a : augment::load_augmented(opts->input)) {
        ids.push_back(a.base.id);
        inputs.push_back(a.model_input());
      }
    } else {
      for (const auto& e : corpus::load_corpus(opts->input)) {
        ids.push_back(e.id);
        inputs.push_back(text::join(e.concepts.concepts(), " "));
      }
    }
    const auto generator = generator_for(config);
    const auto gens = generate_all(ids, inputs, *generator, config.decode, config.workers);
    corpus::write_generations(opts->out, gens);
    auto m = file_manifest(common, opts->out, &config);
    m.manifest().providers["generator"] = OrderedJson::parse(generator->config().dump());
    m.add_input(opts->input);
    m.add_output(opts->out);
    m.write();
  });
}

// ---------------------------------------------------------------- infill

void setup_infill(CLI::App& app, Common& common) {
  struct Opts {
    std::string corpus, sources, out;
    bool evaluate = false;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("infill", "Mask-infilling pipeline: extract, enumerate, rank, infill");
  sub->add_option("--corpus", opts->corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--sources", opts->sources, "Baseline generations to extract from (default: first reference)")
      ->check(CLI::ExistingFile);
  sub->add_option("--out", opts->out, "Output directory")->required();
  sub->add_flag("--evaluate", opts->evaluate, "Also score the best infills (report.json)");
  add_config_option(sub, common);
  sub->callback([opts, &common] {
    PipelineRequest req;
    req.kind = PipelineKind::kMi;
    req.corpus = opts->corpus;
    if (!opts->sources.empty()) req.sources = opts->sources;
    req.out_dir = opts->out;
    req.evaluate = opts->evaluate;
    req.command = common.command;
    const auto result = run_pipeline(req, common.config());
    if (result.report) std::cout << evaluation::to_json(*result.report)["aggregate"].dump(2) << "\n";
  });
}

// ---------------------------------------------------------------- evaluate

void setup_evaluate(CLI::App& app, Common& common) {
  struct Opts {
    std::string gen, corpus, out, metrics, field = "output";
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("evaluate", "Score generations against a corpus split");
  sub->add_option("--gen", opts->gen, "Generations JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--corpus", opts->corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--metrics", opts->metrics, "Comma-separated metrics (default: config evaluate.metrics)");
  sub->add_option("--field", opts->field, "Generation field: output or best")
      ->check(CLI::IsMember({"output", "best"}));
  sub->add_option("--out", opts->out, "Report JSON")->required();
  add_config_option(sub, common);
  sub->callback([opts, &common] {
    auto config = common.config();
    if (!opts->metrics.empty()) {
      config.evaluate.metrics.clear();
      for (auto& m : text::split(opts->metrics, ",")) {
        const auto t = text::trim(m);
        if (!t.empty()) config.evaluate.metrics.emplace_back(t);
      }
    }
    config.validate();
    const auto examples = corpus::load_corpus(opts->corpus);
    const auto gens = corpus::load_generations(opts->gen, opts->field);
    const auto report = evaluation::evaluate(examples, gens, config.evaluate);
    evaluation::write_report(opts->out, report);
    auto m = file_manifest(common, opts->out, &config);
    m.add_input(opts->gen);
    m.add_input(opts->corpus);
    m.add_output(opts->out);
    m.write();
    std::cout << evaluation::to_json(report)["aggregate"].dump(2) << "\n";
  });
}

// ---------------------------------------------------------------- correlate

void setup_correlate(CLI::App& app, Common& common) {
  struct Opts {
    std::string report, corpus, out;
    double alpha = 0.05;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("correlate", "Correlate concept-set size with per-example metrics");
  sub->add_option("--report", opts->report, "Report JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--corpus", opts->corpus, "Corpus JSONL giving concept-set sizes")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--alpha", opts->alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--out", opts->out, "Output JSON (default: stdout)");
  sub->callback([opts, &common] {
    const auto report = evaluation::load_report(opts->report);
    std::map<std::string, std::size_t> sizes;
    for (const auto& e : corpus::load_corpus(opts->corpus)) sizes[e.id] = e.concepts.size();
    const auto result = evaluation::correlate(report, sizes, opts->alpha);
    emit_json(evaluation::to_json(result), opts->out, common, {opts->report, opts->corpus});
  });
}

// ---------------------------------------------------------------- significance

void setup_significance(CLI::App& app, Common& common) {
  struct Opts {
    std::string a, b, metric, corpus, out, field = "output";
    evaluation::PitmanOptions pitman;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("significance", "Paired sign-flip permutation test between two systems");
  sub->add_option("--a", opts->a, "System A: report JSON or generations JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--b", opts->b, "System B: report JSON or generations JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--metric", opts->metric, "Per-example metric to compare")->required();
  sub->add_option("--corpus", opts->corpus, "Corpus JSONL (needed for generation files)")->check(CLI::ExistingFile);
  sub->add_option("--field", opts->field, "Generation field: output or best")
      ->check(CLI::IsMember({"output", "best"}));
  sub->add_option("--samples", opts->pitman.mc_samples, "Monte Carlo sign flips above the exhaustive cutoff");
  sub->add_option("--exhaustive-cutoff", opts->pitman.exhaustive_cutoff, "Largest n enumerated exactly");
  sub->add_option("--seed", opts->pitman.seed, "Monte Carlo seed");
  sub->add_option("--out", opts->out, "Output JSON (default: stdout)");
  add_config_option(sub, common);
  sub->callback([opts, &common] {
    auto config = common.config();
    config.evaluate.metrics = {opts->metric};
    std::optional<std::vector<corpus::Example>> examples;
    auto load = [&](const std::string& path) {
      if (auto r = try_load_report(path)) return *r;
      if (opts->corpus.empty()) throw ValidationError(path + " is not a report; pass --corpus to score it");
      if (!examples) examples = corpus::load_corpus(opts->corpus);
      const auto gens = corpus::load_generations(path, opts->field);
      return with_context(path, [&] { return evaluation::evaluate(*examples, gens, config.evaluate); });
    };
    const auto a = load(opts->a);
    const auto b = load(opts->b);
    const auto result = evaluation::significance(a, b, opts->metric, opts->pitman);
    std::vector<fs::path> inputs = {opts->a, opts->b};
    if (!opts->corpus.empty()) inputs.emplace_back(opts->corpus);
    emit_json(evaluation::to_json(result), opts->out, common, inputs);
  });
}

// ---------------------------------------------------------------- sweep

void setup_sweep(CLI::App& app, Common& common) {
  struct Opts {
    std::string spec, out;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("sweep", "Pick a hyperparameter by seed-averaged dev metric");
  sub->add_option("--spec", opts->spec, "Sweep spec JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", opts->out, "Output directory")->required();
  add_config_option(sub, common);
  sub->callback([opts, &common] {
    const auto config = common.config();
    const auto spec = load_sweep_spec(opts->spec);
    const fs::path dir(opts->out);
    fs::create_directories(dir);
    const auto report = run_sweep(spec, config, dir / "cells", common.command);
    ManifestBuilder m(manifest_path_for(dir, true), common.command);
    m.manifest().config = to_json(config);
    m.manifest().seeds = {{"seeds", report.spec.seeds}};
    m.add_input(opts->spec);
    write_file_atomic(dir / "sweep.json", to_json(report).dump(2) + "\n");
    write_file_atomic(dir / "sweep_table.tsv", sweep_table_tsv(report));
    m.add_output(dir / "sweep.json");
    m.add_output(dir / "sweep_table.tsv");
    m.write();
    std::cout << fmt::format("winner: {}\n", report.choice.winner);
  });
}

// ---------------------------------------------------------------- emit-training-config

void setup_emit_training_config(CLI::App& app, Common& common) {
  struct Opts {
    std::string profile, method, out;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("emit-training-config", "Write fine-tuning settings for an external trainer");
  sub->add_option("--profile", opts->profile, fmt::format("Model profile: {}", fmt::join(training_profiles(), ", ")))
      ->required();
  sub->add_option("--method", opts->method, "baseline, kw, att or p2t")->required();
  sub->add_option("--out", opts->out, "Output JSON (default: stdout)");
  sub->callback([opts, &common] {
    emit_json(to_json(training_config(opts->profile, opts->method)), opts->out, common, {});
  });
}

// ---------------------------------------------------------------- verify-manifest

void setup_verify_manifest(CLI::App& app, Common&) {
  struct Opts {
    std::string manifest, root;
    bool skip_inputs = false;
  };
  auto opts = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("verify-manifest", "Recompute and compare the digests recorded in a manifest");
  sub->add_option("--manifest", opts->manifest, "Manifest JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--root", opts->root, "Resolve outputs against this directory instead (rerun comparison)")
      ->check(CLI::ExistingDirectory);
  sub->add_flag("--skip-inputs", opts->skip_inputs, "Check outputs only");
  sub->callback([opts] {
    std::optional<fs::path> root;
    if (!opts->root.empty()) root = opts->root;
    const auto r = verify_manifest(opts->manifest, root, !opts->skip_inputs);
    for (const auto& p : r.missing) std::cout << "missing: " << p << "\n";
    for (const auto& p : r.mismatched) std::cout << "mismatch: " << p << "\n";
    if (!r.ok()) {
      throw ValidationError(fmt::format("{} of {} files failed verification", r.missing.size() + r.mismatched.size(),
                                        r.checked));
    }
    std::cout << fmt::format("ok: {} files verified\n", r.checked);
  });
}

// stdout carries command results, so logs go to stderr.
void use_stderr_logger() {
  static const bool installed = [] {
    spdlog::set_default_logger(spdlog::stderr_color_mt("c2t"));
    return true;
  }();
  (void)installed;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Concept-to-text data toolkit: splits, augmentation, recombination, infilling and evaluation", "c2t"};
  app.require_subcommand(1);
  app.set_version_flag("--version", C2T_VERSION);
  use_stderr_logger();
  spdlog::set_level(spdlog::level::info);
  app.add_flag_callback("-q,--quiet", [] { spdlog::set_level(spdlog::level::warn); }, "Only log warnings and errors");

  Common common;
  common.command = args;
  setup_split(app, common);
  setup_extract(app, common);
  setup_augment(app, common);
  setup_build_p2t(app, common);
  setup_generate(app, common);
  setup_infill(app, common);
  setup_evaluate(app, common);
  setup_correlate(app, common);
  setup_significance(app, common);
  setup_sweep(app, common);
  setup_emit_training_config(app, common);
  setup_verify_manifest(app, common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const ProviderError& e) {
    spdlog::error("{}", e.what());
    return kExitProvider;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace c2t::cli
