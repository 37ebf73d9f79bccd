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

// Constraint regularizers over per-token label distributions.
//
//   unique core roles      B_X(u,i) -> AND_{j != i} not B_X(u,j)
//   exclusive overlap      P(u,i,j,X) -> AND_{(v,Y) != (u,X)} Q(v,i,j,Y)
//   frame core roles       Sense(u,k) -> AND_{i, X not in R(u,k)}
//                                          not (B_X(u,i) and I_X(u,i))
//
// Literals are relaxed with Goedel connectives and every implication becomes
// the log-space hinge softlogic::imply_nll. A Goedel expression depends
// locally on exactly one grid entry, so intermediate values are carried as
// RoutedValue and the losses return dense gradients, one matrix per grid.

#ifndef ROLEGRAD_CONSTRAINTS_H_
#define ROLEGRAD_CONSTRAINTS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rolegrad/frames.h"
#include "rolegrad/labels.h"
#include "rolegrad/softlogic.h"

namespace rolegrad {

// Per-token label distributions of one (sentence, predicate) pair.
struct ScoreGrid {
  int sentence_id = 0;
  int predicate_index = 0;
  // length x num_tags, rows are distributions over the BIO tags.
  Eigen::MatrixXd probs;

  int length() const { return static_cast<int>(probs.rows()); }
  double begin(int arg, int i) const {
    return probs(i, LabelSet::begin_tag(arg));
  }
  // Positions past the end read as probability 0.
  double inside(int arg, int i) const {
    return i >= length() ? 0.0 : probs(i, LabelSet::inside_tag(arg));
  }
  // Rows must sum to 1 and entries lie in [0, 1]. Throws
  // std::invalid_argument otherwise.
  void validate(double tolerance = 1e-6) const;
};

struct ConstraintWeights {
  double lambda_u = 0.0;
  double lambda_o = 0.0;
  double lambda_f = 0.0;
  int beam_k = 4;
  double epsilon = softlogic::kDefaultEpsilon;

  // Throws ConfigError on negative or nonfinite weights, beam_k < 1, or
  // epsilon outside (0, 0.5).
  void validate() const;
};

struct SpanTriple {
  int start = 0;
  int end = 0;  // inclusive
  int arg = 0;
  double score = 0.0;
};

// A Goedel expression over grid entries together with the single entry that
// carries its local derivative (coef = d value / d probs(row, col)).
// row < 0 marks a constant.
struct RoutedValue {
  double value = 0.0;
  int row = -1;
  int col = -1;
  double coef = 0.0;
  std::uint64_t branch = 0;
};

struct GridPenalty {
  double loss = 0.0;
  std::vector<Eigen::MatrixXd> gradient;  // one per input grid
  std::uint64_t branch = 0;
};

GridPenalty loss_unique(const ScoreGrid& grid, const LabelSet& labels,
                        double epsilon = softlogic::kDefaultEpsilon);

// min(B_X(u,i), I_X(u,j), 1 - I_X(u,j+1)). Throws std::invalid_argument
// ("degenerate span") when j <= i.
RoutedValue span_begin_score(const ScoreGrid& grid, int i, int j, int arg);

// min(Q1, Q2) with Q1 = 1 - min(B_Y(v,j), I_Y(v,j+1)) and
// Q2 = max(B_Y(v,i), I_Y(v,i), 1 - I_Y(v,j), 1 - I_Y(v,j+1)).
RoutedValue crossing_guard(const ScoreGrid& grid_v, int i, int j, int arg);

// The k highest-scoring spans (j > i) for `arg`, descending by score, ties in
// lexicographic (i, j) order.
std::vector<SpanTriple> topk_spans(const ScoreGrid& grid, int arg, int k);

// Exclusive-overlap loss over all grids of one sentence. With beam_k unset
// every span (i, j), j > i, is an antecedent.
GridPenalty loss_overlap(std::span<const ScoreGrid> grids,
                         const LabelSet& labels, std::optional<int> beam_k,
                         double epsilon = softlogic::kDefaultEpsilon);

// Frame loss for one predicate given the argument indices of its roleset.
GridPenalty loss_frame(const ScoreGrid& grid, std::span<const int> allowed,
                       const LabelSet& labels,
                       double epsilon = softlogic::kDefaultEpsilon);

enum class UnknownFramePolicy { kSkip, kError };

// Looks the roleset up by (lemma, sense). Unknown keys either yield a zero
// penalty with a logged warning or throw DataError.
GridPenalty loss_frame(const ScoreGrid& grid, const std::string& lemma,
                       const std::string& sense, const FrameInventory& frames,
                       const LabelSet& labels, UnknownFramePolicy policy,
                       double epsilon = softlogic::kDefaultEpsilon);

// ce + lambda_u * lu + lambda_o * lo + lambda_f * lf. Throws NumericError
// ("nonfinite loss") if any component is NaN or infinite.
double combine_loss(double ce, double lu, double lo, double lf,
                    const ConstraintWeights& weights);

}  // namespace rolegrad

#endif  // ROLEGRAD_CONSTRAINTS_H_
