// Copyright 2026 The Rolegrad Authors.
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

#include "rolegrad/cli.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rolegrad/checkpoint.h"
#include "rolegrad/corpus.h"
#include "rolegrad/error.h"
#include "rolegrad/eval.h"
#include "rolegrad/frames.h"
#include "rolegrad/gradcheck_suite.h"
#include "rolegrad/log.h"
#include "rolegrad/run_config.h"
#include "rolegrad/synth.h"
#include "rolegrad/trainer.h"
#include "rolegrad/vocab.h"

namespace rolegrad {

namespace {

namespace fs = std::filesystem;

struct TrainFlags {
  std::optional<std::string> config;
  std::optional<std::string> train, dev, test, frames, out, constraints;
  std::optional<double> lambda_u, lambda_o, lambda_f, lr1, lr2, warmup, dropout;
  std::optional<int> beam_k, epochs1, epochs2, batch_size, threads;
  std::optional<bool> freeze_transitions;
  std::optional<int> embed_dim, hidden_dim;
  std::optional<std::uint64_t> seed;
};

template <typename T>
void override(std::optional<T>& flag, T& field) {
  if (flag) field = *flag;
}

RunConfig resolve_config(TrainFlags& f) {
  RunConfig c = f.config ? load_run_config(*f.config) : RunConfig{};
  override(f.train, c.train);
  override(f.dev, c.dev);
  override(f.test, c.test);
  override(f.frames, c.frames);
  override(f.out, c.out);
  override(f.lambda_u, c.weights.lambda_u);
  override(f.lambda_o, c.weights.lambda_o);
  override(f.lambda_f, c.weights.lambda_f);
  override(f.beam_k, c.weights.beam_k);
  override(f.epochs1, c.schedule.stage1_epochs);
  override(f.lr1, c.schedule.stage1_lr);
  override(f.epochs2, c.schedule.stage2_epochs);
  override(f.lr2, c.schedule.stage2_lr);
  override(f.warmup, c.schedule.warmup_fraction);
  override(f.batch_size, c.schedule.batch_size);
  override(f.freeze_transitions, c.schedule.freeze_transitions);
  override(f.seed, c.schedule.seed);
  override(f.threads, c.threads);
  override(f.embed_dim, c.model.embed_dim);
  override(f.hidden_dim, c.model.hidden_dim);
  override(f.dropout, c.model.dropout);
  if (f.constraints) {
    c.constraints = *f.constraints;
    // A family switched off on the command line drops its preset weight,
    // unless the same command line also set that weight explicitly.
    if (c.constraints->find('U') == std::string::npos && !f.lambda_u) {
      c.weights.lambda_u = 0.0;
    }
    if (c.constraints->find('O') == std::string::npos && !f.lambda_o) {
      c.weights.lambda_o = 0.0;
    }
    if (c.constraints->find('F') == std::string::npos && !f.lambda_f) {
      c.weights.lambda_f = 0.0;
    }
  } else if (c.constraints &&
             (f.lambda_u || f.lambda_o || f.lambda_f)) {
    // Explicit weights on the command line redefine the enabled set.
    c.constraints.reset();
  }
  if (c.out.empty()) c.out = "run";
  return c;
}

void require_file(const std::string& path, const char* what) {
  if (!path.empty() && !fs::is_regular_file(path)) {
    throw ConfigError(std::string(what) + " file not found: " + path);
  }
}

LabelSet labels_for(const std::vector<const Corpus*>& corpora) {
  LabelSet labels = LabelSet::standard();
  for (const Corpus* c : corpora) {
    if (c != nullptr) labels = labels.extended(corpus_labels(*c));
  }
  return labels;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

int cmd_train(TrainFlags& flags, std::ostream& out) {
  RunConfig cfg = resolve_config(flags);
  cfg.validate();
  if (cfg.train.empty()) throw ConfigError("--train is required");
  require_file(cfg.train, "train");
  require_file(cfg.dev, "dev");
  require_file(cfg.test, "test");
  require_file(cfg.frames, "frames");

  const Corpus train = load_corpus(cfg.train);
  std::optional<Corpus> dev, test;
  if (!cfg.dev.empty()) dev = load_corpus(cfg.dev);
  if (!cfg.test.empty()) test = load_corpus(cfg.test);
  const LabelSet labels = labels_for({&train, dev ? &*dev : nullptr,
                                      test ? &*test : nullptr});
  std::optional<FrameInventory> frames;
  if (!cfg.frames.empty()) frames = FrameInventory::load(cfg.frames, labels);

  TrainOptions opts;
  opts.schedule = cfg.schedule;
  opts.weights = cfg.weights;
  opts.threads = cfg.threads;
  ModelConfig model = cfg.model;
  Tagger tagger =
      Tagger::create(labels, Vocabulary::build(train), model, cfg.schedule.seed);

  fs::create_directories(cfg.out);
  const std::string metrics_path = (fs::path(cfg.out) / "metrics.jsonl").string();
  std::ofstream metrics(metrics_path, std::ios::binary);
  if (!metrics) throw ConfigError("cannot write " + metrics_path);
  write_text((fs::path(cfg.out) / "config.json").string(), cfg.to_json() + "\n");
  opts.on_epoch = [&](const EpochMetrics& m) {
    metrics << m.to_json() << '\n';
    metrics.flush();
    out << "stage " << m.stage << " epoch " << m.epoch << "  total "
        << m.total;
    if (m.dev) out << "  dev_f1 " << m.dev->prf.f1;
    out << '\n';
  };
  train_two_stage(tagger, train, dev ? &*dev : nullptr,
                  frames ? &*frames : nullptr, opts);

  const std::string ckpt = (fs::path(cfg.out) / "model.json").string();
  save_checkpoint(tagger, ckpt);
  out << "checkpoint " << ckpt << '\n' << "metrics " << metrics_path << '\n';
  if (test) {
    const EvalReport report =
        evaluate_tagger(tagger, *test, frames ? &*frames : nullptr);
    const std::string path = (fs::path(cfg.out) / "test_report.json").string();
    write_text(path, report.to_json() + "\n");
    out << report.to_table() << "report " << path << '\n';
  }
  return kExitOk;
}

struct EvalFlags {
  std::string checkpoint;
  std::string data;
  std::string frames;
  std::string out;
  bool json = false;
};

int cmd_eval(const EvalFlags& f, std::ostream& out) {
  require_file(f.checkpoint, "checkpoint");
  require_file(f.data, "data");
  require_file(f.frames, "frames");
  const Tagger tagger = load_checkpoint(f.checkpoint);
  const Corpus data = load_corpus(f.data);
  std::optional<FrameInventory> frames;
  if (!f.frames.empty()) frames = FrameInventory::load(f.frames, tagger.labels);
  const EvalReport report =
      evaluate_tagger(tagger, data, frames ? &*frames : nullptr);
  out << (f.json ? report.to_json() + "\n" : report.to_table());
  if (!f.out.empty()) write_text(f.out, report.to_json() + "\n");
  return kExitOk;
}

struct CheckFlags {
  std::string data;
  std::string frames;
  std::string out;
};

int cmd_check(const CheckFlags& f, std::ostream& out) {
  require_file(f.data, "data");
  require_file(f.frames, "frames");
  const Corpus data = load_corpus(f.data);
  const LabelSet labels = labels_for({&data});
  std::optional<FrameInventory> frames;
  if (!f.frames.empty()) frames = FrameInventory::load(f.frames, labels);
  const EvalReport report = evaluate(data, encode_gold(data, labels), labels,
                                     frames ? &*frames : nullptr);
  nlohmann::ordered_json doc;
  doc["rho_u"] = report.rho_u;
  doc["rho_o"] = report.rho_o;
  if (report.rho_f) {
    doc["rho_f"] = *report.rho_f;
  } else {
    doc["rho_f"] = "NA";
  }
  doc["propositions"] = report.propositions;
  doc["sentences"] = report.sentences;
  doc["rho_f_scored"] = report.rho_f_scored;
  doc["rho_f_skipped"] = report.rho_f_skipped;
  out << doc.dump(2) << '\n';
  if (!f.out.empty()) write_text(f.out, doc.dump(2) + "\n");
  return kExitOk;
}

struct GradcheckFlags {
  std::uint64_t seed = 0;
  int trials = 100;
  double step = 1e-5;
  std::optional<std::string> fault;
};

int cmd_gradcheck(const GradcheckFlags& f, std::ostream& out) {
  GradcheckOptions opts;
  opts.seed = f.seed;
  opts.trials = f.trials;
  opts.step = f.step;
  opts.inject_fault = f.fault;
  const std::vector<GradcheckRow> rows = run_gradcheck_suite(opts);
  out << format_gradcheck_table(rows);
  bool ok = true;
  for (const GradcheckRow& r : rows) {
    if (!r.pass) {
      out << "gradient check failed: " << r.component << '\n';
      ok = false;
    }
  }
  return ok ? kExitOk : kExitNumeric;
}

struct SynthFlags {
  std::uint64_t seed = 7;
  int sentences = 200;
  int vocab_size = 48;
  int max_len = 12;
  double bias = 0.3;
  std::string out;
  std::string frames_out;
};

int cmd_synth(const SynthFlags& f, std::ostream& out) {
  const FrameInventory frames = synth_frames();
  const Corpus corpus = synth_corpus(f.seed, f.sentences, f.vocab_size,
                                     f.max_len, frames, f.bias);
  const std::string ext = fs::path(f.out).extension().string();
  if (ext == ".conll" || ext == ".props" || ext == ".txt") {
    save_conll_cols(corpus, f.out);
  } else {
    save_jsonl(corpus, f.out);
  }
  out << "wrote " << corpus.size() << " sentences to " << f.out << '\n';
  if (!f.frames_out.empty()) {
    frames.save(f.frames_out);
    out << "wrote " << frames.size() << " rolesets to " << f.frames_out << '\n';
  }
  return kExitOk;
}

int cmd_presets(const std::optional<std::string>& show, std::ostream& out) {
  if (show) {
    const auto text = preset_json(*show);
    if (!text) throw ConfigError("unknown preset " + *show);
    out << merge_config(RunConfig{}, *text, *show).to_json() << '\n';
    return kExitOk;
  }
  for (const std::string& name : preset_names()) out << name << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Constraint-regularized semantic role tagger", "rolegrad"};
  app.require_subcommand(1);

  TrainFlags tf;
  CLI::App* train = app.add_subcommand("train", "Two-stage training run");
  train->add_option("--config", tf.config, "Preset name or JSON config file");
  train->add_option("--train", tf.train, "Training corpus (.jsonl or .conll)");
  train->add_option("--dev", tf.dev, "Development corpus");
  train->add_option("--test", tf.test, "Test corpus, scored after training");
  train->add_option("--frames", tf.frames, "Frame inventory JSON");
  train->add_option("--out", tf.out, "Output directory (default: run)");
  train->add_option("--constraints", tf.constraints,
                    "Enabled constraint families, a subset of UOF");
  train->add_option("--lambda-u", tf.lambda_u, "Weight of L_U");
  train->add_option("--lambda-o", tf.lambda_o, "Weight of L_O");
  train->add_option("--lambda-f", tf.lambda_f, "Weight of L_F");
  train->add_option("--beam-k", tf.beam_k, "Top-k spans per label in L_O");
  train->add_option("--epochs1", tf.epochs1, "Stage 1 epochs");
  train->add_option("--lr1", tf.lr1, "Stage 1 learning rate");
  train->add_option("--epochs2", tf.epochs2, "Stage 2 epochs");
  train->add_option("--lr2", tf.lr2, "Stage 2 learning rate");
  train->add_option("--warmup", tf.warmup, "Warmup fraction per stage");
  train->add_option("--batch-size", tf.batch_size, "Sentences per update");
  train->add_option("--freeze-transitions", tf.freeze_transitions,
                    "Keep CRF transitions fixed in stage 2 (true/false)");
  train->add_option("--seed", tf.seed, "Random seed");
  train->add_option("--threads", tf.threads, "Worker threads per batch");
  train->add_option("--embed-dim", tf.embed_dim, "Embedding size");
  train->add_option("--hidden-dim", tf.hidden_dim, "Hidden size");
  train->add_option("--dropout", tf.dropout, "Dropout rate");

  EvalFlags ef;
  CLI::App* eval = app.add_subcommand("eval", "Decode and score a corpus");
  eval->add_option("--checkpoint", ef.checkpoint, "Checkpoint file")->required();
  eval->add_option("--data,--test", ef.data, "Corpus to score")->required();
  eval->add_option("--frames", ef.frames, "Frame inventory JSON");
  eval->add_option("--out", ef.out, "Write the JSON report here");
  eval->add_flag("--json", ef.json, "Print JSON instead of a table");

  CheckFlags cf;
  CLI::App* check =
      app.add_subcommand("check", "Violation rates of gold annotations");
  check->add_option("--data", cf.data, "Corpus")->required();
  check->add_option("--frames", cf.frames, "Frame inventory JSON");
  check->add_option("--out", cf.out, "Write the JSON report here");

  GradcheckFlags gf;
  CLI::App* grad =
      app.add_subcommand("gradcheck", "Finite-difference gradient checks");
  grad->add_option("--seed", gf.seed, "Random seed");
  grad->add_option("--trials", gf.trials, "Points per component")
      ->check(CLI::PositiveNumber);
  grad->add_option("--step", gf.step, "Finite-difference step")
      ->check(CLI::Range(1e-12, 1e-3));
  grad->add_option("--inject-fault", gf.fault,
                   "Flip the analytic gradient sign of one component")
      ->check(CLI::IsMember(gradcheck_components()));

  SynthFlags sf;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth->add_option("--seed", sf.seed, "Random seed");
  synth->add_option("--sentences", sf.sentences, "Number of sentences")
      ->check(CLI::PositiveNumber);
  synth->add_option("--vocab-size", sf.vocab_size, "Content words");
  synth->add_option("--max-len", sf.max_len, "Maximum sentence length");
  synth->add_option("--bias", sf.bias, "Ambiguity rate in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--out", sf.out, "Output corpus path")->required();
  synth->add_option("--frames-out", sf.frames_out,
                    "Also write the frame inventory");

  std::optional<std::string> show;
  CLI::App* presets = app.add_subcommand("presets", "List named configs");
  presets->add_option("--show", show, "Print one preset as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) return cmd_train(tf, out);
    if (*eval) return cmd_eval(ef, out);
    if (*check) return cmd_check(cf, out);
    if (*grad) return cmd_gradcheck(gf, out);
    if (*synth) return cmd_synth(sf, out);
    if (*presets) return cmd_presets(show, out);
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace rolegrad
