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

#include "rolegrad/trainer.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <thread>

#include "json.hpp"
#include "rolegrad/error.h"
#include "rolegrad/log.h"

namespace rolegrad {

namespace {

// Evaluates every sentence of a batch, optionally on worker threads. Results
// land in input order so the reduction below is order-fixed.
std::vector<SentenceObjective> evaluate_batch(
    const Tagger& tagger, const std::vector<const EncodedSentence*>& batch,
    const SentenceObjectiveOptions& base, std::uint64_t epoch_seed,
    int threads) {
  std::vector<SentenceObjective> out(batch.size());
  auto run = [&](std::size_t b) {
    SentenceObjectiveOptions opts = base;
    opts.dropout_seed = softlogic::mix_branch(
        epoch_seed, static_cast<std::uint64_t>(batch[b]->id));
    out[b] = sentence_objective(tagger, *batch[b], opts);
  };
  const int workers =
      std::min<int>(std::max(threads, 1), static_cast<int>(batch.size()));
  if (workers <= 1) {
    for (std::size_t b = 0; b < batch.size(); ++b) run(b);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t b = w; b < batch.size(); b += workers) run(b);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

void TrainSchedule::validate() const {
  if (stage1_epochs < 0 || stage2_epochs < 0) {
    throw ConfigError("epochs must be nonnegative");
  }
  if (!(stage1_lr > 0.0) || !(stage2_lr > 0.0) || !std::isfinite(stage1_lr) ||
      !std::isfinite(stage2_lr)) {
    throw ConfigError("learning rates must be positive");
  }
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) {
    throw ConfigError("warmup fraction must lie in [0, 1)");
  }
  if (batch_size < 1) throw ConfigError("batch size must be positive");
}

double warmup_lr(double base_lr, long long update, long long stage_updates,
                 double warmup_fraction) {
  const double warm = warmup_fraction * static_cast<double>(stage_updates);
  if (warm <= 0.0 || static_cast<double>(update) >= warm) return base_lr;
  return base_lr * static_cast<double>(update + 1) / std::ceil(warm);
}

void adam_step(ModelParams& params, const ParamTensors& grads, AdamState& state,
               double lr, std::uint32_t frozen) {
  if (state.m[0].size() == 0) {
    state.m = params.zeros();
    state.v = params.zeros();
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (int p = 0; p < kNumParams; ++p) {
    if (frozen & (1u << p)) continue;
    Eigen::MatrixXd& m = state.m[p];
    Eigen::MatrixXd& v = state.v[p];
    m = state.beta1 * m + (1.0 - state.beta1) * grads[p];
    v = state.beta2 * v + (1.0 - state.beta2) * grads[p].cwiseAbs2();
    params[p].array() -= lr * (m.array() / c1) /
                         ((v.array() / c2).sqrt() + state.epsilon);
  }
}

std::string EpochMetrics::to_json() const {
  nlohmann::ordered_json doc;
  doc["stage"] = stage;
  doc["epoch"] = epoch;
  doc["lr"] = lr;
  doc["loss_e"] = loss.ce;
  doc["loss_u"] = loss.lu;
  doc["loss_o"] = loss.lo;
  doc["loss_f"] = loss.lf;
  doc["total"] = total;
  if (dev) {
    doc["dev"] = nlohmann::ordered_json::parse(dev->to_json(-1));
  } else {
    doc["dev"] = nullptr;
  }
  return doc.dump();
}

EvalReport evaluate_tagger(const Tagger& tagger, const Corpus& corpus,
                           const FrameInventory* frames) {
  const std::vector<EncodedSentence> encoded =
      encode_corpus(corpus, tagger, nullptr);
  return evaluate(corpus, predict(tagger, encoded), tagger.labels, frames);
}

TrainResult train_two_stage(Tagger& tagger, const Corpus& train,
                            const Corpus* dev, const FrameInventory* frames,
                            const TrainOptions& options) {
  const TrainSchedule& sched = options.schedule;
  sched.validate();
  options.weights.validate();
  if (train.empty()) throw DataError("training corpus is empty");
  if (options.weights.lambda_f > 0.0 && frames == nullptr) {
    throw ConfigError("lambda_f > 0 requires a frame inventory");
  }
  const std::vector<EncodedSentence> data =
      encode_corpus(train, tagger, frames, options.frame_policy);
  const bool dev_ok = dev != nullptr && count_propositions(*dev) > 0;

  const long long n = static_cast<long long>(data.size());
  const long long batches = (n + sched.batch_size - 1) / sched.batch_size;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  AdamState adam;
  int global_epoch = 0;
  for (int stage = 1; stage <= 2; ++stage) {
    const int epochs = stage == 1 ? sched.stage1_epochs : sched.stage2_epochs;
    const double base_lr = stage == 1 ? sched.stage1_lr : sched.stage2_lr;
    SentenceObjectiveOptions opts;
    if (stage == 2) opts.weights = options.weights;
    opts.weights.beam_k = options.weights.beam_k;
    opts.weights.epsilon = options.weights.epsilon;
    const long long stage_updates = batches * epochs;
    const std::uint32_t frozen =
        stage == 2 && sched.freeze_transitions ? 1u << kTransitions : 0u;
    long long update = 0;
    for (int epoch = 1; epoch <= epochs; ++epoch, ++global_epoch) {
      const std::uint64_t epoch_seed = softlogic::mix_branch(
          sched.seed, static_cast<std::uint64_t>(global_epoch));
      std::mt19937_64 shuffle_rng(epoch_seed);
      std::shuffle(order.begin(), order.end(), shuffle_rng);

      EpochMetrics metrics;
      metrics.stage = stage;
      metrics.epoch = epoch;
      for (long long b = 0; b < batches; ++b) {
        std::vector<const EncodedSentence*> batch;
        const long long end = std::min(n, (b + 1) * sched.batch_size);
        for (long long s = b * sched.batch_size; s < end; ++s) {
          batch.push_back(&data[order[s]]);
        }
        const std::vector<SentenceObjective> parts =
            evaluate_batch(tagger, batch, opts, epoch_seed, options.threads);
        ParamTensors grads = tagger.params.zeros();
        const double scale = 1.0 / static_cast<double>(batch.size());
        for (const SentenceObjective& obj : parts) {
          metrics.loss.ce += obj.parts.ce;
          metrics.loss.lu += obj.parts.lu;
          metrics.loss.lo += obj.parts.lo;
          metrics.loss.lf += obj.parts.lf;
          metrics.total += obj.total;
          for (int p = 0; p < kNumParams; ++p) {
            grads[p] += scale * obj.gradients[p];
          }
        }
        metrics.lr =
            warmup_lr(base_lr, update++, stage_updates, sched.warmup_fraction);
        adam_step(tagger.params, grads, adam, metrics.lr, frozen);
      }
      const double inv = 1.0 / static_cast<double>(n);
      metrics.loss.ce *= inv;
      metrics.loss.lu *= inv;
      metrics.loss.lo *= inv;
      metrics.loss.lf *= inv;
      metrics.total *= inv;
      if (dev_ok) metrics.dev = evaluate_tagger(tagger, *dev, frames);
      logger().info("stage {} epoch {}: total {:.6f}", stage, epoch,
                    metrics.total);
      if (options.on_epoch) options.on_epoch(metrics);
      result.log.push_back(std::move(metrics));
    }
  }
  return result;
}

}  // namespace rolegrad
