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

#ifndef ROLEGRAD_TAGGER_H_
#define ROLEGRAD_TAGGER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rolegrad/constraints.h"
#include "rolegrad/corpus.h"
#include "rolegrad/eval.h"
#include "rolegrad/frames.h"
#include "rolegrad/labels.h"
#include "rolegrad/model.h"
#include "rolegrad/vocab.h"

namespace rolegrad {

// Everything needed to score and decode: label inventory, vocabulary and
// parameters.
struct Tagger {
  LabelSet labels = LabelSet::standard();
  Vocabulary vocab;
  ModelParams params;

  static Tagger create(LabelSet labels, Vocabulary vocab, ModelConfig config,
                       std::uint64_t seed);
};

struct EncodedProposition {
  int pred = 0;
  std::vector<int> gold;
  // Argument indices of the gold sense's roleset, when one is known.
  std::optional<std::vector<int>> roleset;
};

struct EncodedSentence {
  int id = 0;
  std::vector<int> tokens;
  std::vector<EncodedProposition> propositions;
};

// Maps words to ids and tags to tag ids. Throws ConfigError when the corpus
// uses a label the tagger does not know. With `frames` given, unknown
// (lemma, sense) pairs are skipped with one warning each, or raise
// DataError under UnknownFramePolicy::kError.
std::vector<EncodedSentence> encode_corpus(
    const Corpus& corpus, const Tagger& tagger, const FrameInventory* frames,
    UnknownFramePolicy policy = UnknownFramePolicy::kSkip);

struct LossComponents {
  double ce = 0.0;  // L_E, summed over the sentence's propositions
  double lu = 0.0;
  double lo = 0.0;
  double lf = 0.0;
};

struct SentenceObjectiveOptions {
  ConstraintWeights weights;
  // Evaluate the constraint terms (for reporting) even when their weight is
  // zero.
  bool measure_constraints = true;
  bool compute_gradients = true;
  // Dropout mask seed; unset evaluates without dropout.
  std::optional<std::uint64_t> dropout_seed;
};

struct SentenceObjective {
  LossComponents parts;
  double total = 0.0;
  ParamTensors gradients;  // empty arrays when gradients are not requested
  std::uint64_t branch = 0;
};

// L_E + lambda_u L_U + lambda_o L_O + lambda_f L_F for one sentence. Throws
// NumericError naming the component and sentence id on a nonfinite value.
SentenceObjective sentence_objective(const Tagger& tagger,
                                     const EncodedSentence& sentence,
                                     const SentenceObjectiveOptions& options);

// Mean of sentence_objective over a batch, evaluated without dropout.
SentenceObjective batch_objective(const Tagger& tagger,
                                  std::span<const EncodedSentence> batch,
                                  const SentenceObjectiveOptions& options);

// Probability grids for every proposition of a sentence (no dropout).
std::vector<ScoreGrid> sentence_grids(const Tagger& tagger,
                                      const EncodedSentence& sentence);

// Viterbi decoding with hard BIO transitions.
CorpusTags predict(const Tagger& tagger,
                   std::span<const EncodedSentence> sentences);

}  // namespace rolegrad

#endif  // ROLEGRAD_TAGGER_H_
