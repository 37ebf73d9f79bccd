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

// Template corpus generator for desk-scale experiments.
//
// Each sentence has one predicate and a handful of argument phrases. Head
// nouns belong to a role class (agentN, patientN, ... placeN) and signal
// their role. Core arguments are bare head nouns; locative phrases add a
// preposition and sometimes a determiner. Two kinds of ambiguity are injected
// with probability `violation_bias` per sentence:
//
//   * an ambiguous word (ambiN) that is the agent when no other agent is
//     present and a temporal modifier when one is. A learner that cannot see
//     the rest of the sentence tends to label it A0 everywhere, producing
//     duplicate A0 spans.
//   * for lemmas with several senses, a noun whose role class is allowed
//     by a sibling sense but not by the sentence's sense, labeled AM-MNR.
//     Predicting its usual role is an out-of-frame error.
//
// Gold annotations never violate the unique, overlap or frame constraints.

#ifndef ROLEGRAD_SYNTH_H_
#define ROLEGRAD_SYNTH_H_

#include <cstdint>

#include "rolegrad/corpus.h"
#include "rolegrad/frames.h"
#include "rolegrad/labels.h"

namespace rolegrad {

// A small inventory of lemmas with one to three senses over A0-A4.
FrameInventory synth_frames(const LabelSet& labels = LabelSet::standard());

// Deterministic in `seed`. Sentences are 3 to max_len tokens long. Throws
// std::invalid_argument when n_sentences < 1, max_len < 3, vocab_size is
// below the number of role classes, violation_bias lies outside [0, 1], or
// the inventory is empty.
Corpus synth_corpus(std::uint64_t seed, int n_sentences, int vocab_size,
                    int max_len, const FrameInventory& frames,
                    double violation_bias);

}  // namespace rolegrad

#endif  // ROLEGRAD_SYNTH_H_
