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

// Span scoring and structural violation measurements.
//
//   rho_u  % of propositions with two or more B-X for a single core X
//   rho_o  number of argument-span pairs from different propositions of one
//          sentence that partially cross (overlap without containment)
//   rho_f  % of propositions with a core span whose label is outside the
//          roleset of the gold (lemma, sense)

#ifndef ROLEGRAD_EVAL_H_
#define ROLEGRAD_EVAL_H_

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rolegrad/corpus.h"
#include "rolegrad/frames.h"
#include "rolegrad/labels.h"

namespace rolegrad {

struct ArgSpan {
  int start = 0;
  int end = 0;  // inclusive
  int arg = 0;

  auto operator<=>(const ArgSpan&) const = default;
};

// Maximal B-X I-X* runs. Throws std::invalid_argument on a BIO-invalid input.
std::vector<ArgSpan> extract_spans(std::span<const int> tags);

struct PrfScores {
  double precision = 0.0;  // percentages
  double recall = 0.0;
  double f1 = 0.0;
  long long matched = 0;
  long long predicted = 0;
  long long gold = 0;
};

// Micro-averaged exact-boundary, exact-label matching. Throws
// std::invalid_argument when the two sides hold different proposition counts.
PrfScores span_prf(const std::vector<std::vector<ArgSpan>>& gold,
                   const std::vector<std::vector<ArgSpan>>& pred);

bool has_duplicate_core(std::span<const int> tags, const LabelSet& labels);

// Throws std::invalid_argument when there are no propositions.
double rho_u(const std::vector<std::vector<int>>& tags, const LabelSet& labels);

bool spans_cross(const ArgSpan& a, const ArgSpan& b);

// Crossing pairs among the propositions of one sentence. Each unordered pair
// of spans owned by different propositions counts once.
long long count_crossing_pairs(
    const std::vector<std::vector<ArgSpan>>& propositions);

// Sum of count_crossing_pairs over sentences.
long long rho_o(
    const std::vector<std::vector<std::vector<ArgSpan>>>& sentences);

bool violates_roleset(std::span<const ArgSpan> spans,
                      std::span<const int> allowed, const LabelSet& labels);

struct FrameKey {
  std::string lemma;
  std::string sense;
};

struct FrameRate {
  std::optional<double> percent;  // empty when nothing could be scored
  int scored = 0;
  int skipped = 0;
};

// Propositions whose key is missing from the inventory are skipped with a
// warning. Throws DataError on an empty inventory.
FrameRate rho_f(const std::vector<std::vector<ArgSpan>>& spans,
                const std::vector<FrameKey>& keys,
                const FrameInventory& frames, const LabelSet& labels);

struct EvalReport {
  PrfScores prf;
  double rho_u = 0.0;
  long long rho_o = 0;
  std::optional<double> rho_f;  // "NA" when frames are unavailable
  int propositions = 0;
  int sentences = 0;
  int rho_f_scored = 0;
  int rho_f_skipped = 0;

  // Fields: precision, recall, f1, rho_u, rho_o, rho_f (number or "NA"),
  // propositions, sentences, rho_f_scored, rho_f_skipped.
  std::string to_json(int indent = 2) const;
  std::string to_table() const;
};

// Tag ids per sentence, per proposition, aligned with a corpus.
using CorpusTags = std::vector<std::vector<std::vector<int>>>;

CorpusTags encode_gold(const Corpus& corpus, const LabelSet& labels);

// Scores predictions against the corpus gold. frames may be null (rho_f NA).
EvalReport evaluate(const Corpus& gold, const CorpusTags& predicted,
                    const LabelSet& labels, const FrameInventory* frames);

}  // namespace rolegrad

#endif  // ROLEGRAD_EVAL_H_
