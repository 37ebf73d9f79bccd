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

// Two-stage training: stage 1 fits the CRF likelihood alone, stage 2
// continues from the same optimizer state with the constraint terms added.

#ifndef ROLEGRAD_TRAINER_H_
#define ROLEGRAD_TRAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rolegrad/constraints.h"
#include "rolegrad/corpus.h"
#include "rolegrad/eval.h"
#include "rolegrad/frames.h"
#include "rolegrad/model.h"
#include "rolegrad/tagger.h"

namespace rolegrad {

struct TrainSchedule {
  int stage1_epochs = 30;
  double stage1_lr = 3e-5;
  int stage2_epochs = 5;
  double stage2_lr = 1e-5;
  double warmup_fraction = 0.1;
  int batch_size = 8;
  std::uint64_t seed = 1;
  // Holds the CRF transition matrix fixed during stage 2.
  bool freeze_transitions = false;

  // Throws ConfigError when a field is out of range.
  void validate() const;
  bool operator==(const TrainSchedule&) const = default;
};

// Linear warmup over the first warmup_fraction of a stage's updates, then
// constant. `update` counts from 0.
double warmup_lr(double base_lr, long long update, long long stage_updates,
                 double warmup_fraction);

struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long long step = 0;
  ParamTensors m;
  ParamTensors v;
};

// One bias-corrected Adam update. Entries of the transition matrix that are
// masked to -inf never move. Tensors whose bit is set in `frozen` keep both
// their values and their moments.
void adam_step(ModelParams& params, const ParamTensors& grads, AdamState& state,
               double lr, std::uint32_t frozen = 0);

struct EpochMetrics {
  int stage = 1;
  int epoch = 1;  // 1-based within the stage
  LossComponents loss;  // means per training sentence
  double total = 0.0;
  double lr = 0.0;  // rate at the last update of the epoch
  std::optional<EvalReport> dev;

  // Single-line JSON record.
  std::string to_json() const;
};

struct TrainOptions {
  TrainSchedule schedule;
  ConstraintWeights weights;  // applied in stage 2
  int threads = 1;
  UnknownFramePolicy frame_policy = UnknownFramePolicy::kSkip;
  // Called after every epoch, in order.
  std::function<void(const EpochMetrics&)> on_epoch;
};

struct TrainResult {
  std::vector<EpochMetrics> log;
};

// Trains `tagger` in place. `dev` and `frames` may be null. Throws
// ConfigError when lambda_f > 0 without a frame inventory, DataError on an
// empty training corpus, and NumericError on a nonfinite loss.
TrainResult train_two_stage(Tagger& tagger, const Corpus& train,
                            const Corpus* dev, const FrameInventory* frames,
                            const TrainOptions& options);

// Decodes `corpus` and scores it against its own gold annotations.
EvalReport evaluate_tagger(const Tagger& tagger, const Corpus& corpus,
                           const FrameInventory* frames);

}  // namespace rolegrad

#endif  // ROLEGRAD_TRAINER_H_
