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

#include "rolegrad/constraints.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rolegrad/error.h"
#include "rolegrad/log.h"

namespace rolegrad {

using softlogic::mix_branch;

namespace {

RoutedValue entry(const ScoreGrid& g, int row, int col) {
  return {g.probs(row, col), row, col, 1.0, 0};
}

RoutedValue constant(double v) { return {v, -1, -1, 0.0, 0}; }

RoutedValue begin_lit(const ScoreGrid& g, int arg, int i) {
  return entry(g, i, LabelSet::begin_tag(arg));
}

RoutedValue inside_lit(const ScoreGrid& g, int arg, int i) {
  if (i >= g.length()) return constant(0.0);
  return entry(g, i, LabelSet::inside_tag(arg));
}

RoutedValue negated(RoutedValue v) {
  v.value = 1.0 - v.value;
  v.coef = -v.coef;
  return v;
}

// Goedel min/max over routed values; lowest index wins ties.
template <typename Better>
RoutedValue pick(std::initializer_list<RoutedValue> values, Better better,
                 std::uint64_t tag) {
  const RoutedValue* best = values.begin();
  std::uint64_t branch = tag;
  std::size_t index = 0;
  std::size_t k = 0;
  for (const RoutedValue& v : values) {
    branch = mix_branch(branch, v.branch);
    if (k > 0 && better(v.value, best->value)) {
      best = &v;
      index = k;
    }
    ++k;
  }
  RoutedValue out = *best;
  out.branch = mix_branch(branch, index);
  return out;
}

RoutedValue routed_min(std::initializer_list<RoutedValue> values) {
  return pick(values, [](double a, double b) { return a < b; }, 11);
}

RoutedValue routed_max(std::initializer_list<RoutedValue> values) {
  return pick(values, [](double a, double b) { return a > b; }, 12);
}

void accumulate(Eigen::MatrixXd& grad, const RoutedValue& v, double d) {
  if (v.row >= 0 && d != 0.0) grad(v.row, v.col) += d * v.coef;
}

void check_span(const ScoreGrid& g, int i, int j) {
  if (j <= i) throw std::invalid_argument("degenerate span");
  if (i < 0 || j >= g.length()) {
    throw std::invalid_argument("span outside sentence");
  }
}

GridPenalty zero_penalty(std::span<const ScoreGrid> grids) {
  GridPenalty out;
  for (const ScoreGrid& g : grids) {
    out.gradient.push_back(Eigen::MatrixXd::Zero(g.probs.rows(), g.probs.cols()));
  }
  return out;
}

}  // namespace

void ScoreGrid::validate(double tolerance) const {
  for (Eigen::Index r = 0; r < probs.rows(); ++r) {
    if (std::abs(probs.row(r).sum() - 1.0) > tolerance) {
      throw std::invalid_argument("score grid row does not sum to 1");
    }
  }
  if (probs.size() > 0 && (probs.minCoeff() < 0.0 || probs.maxCoeff() > 1.0)) {
    throw std::invalid_argument("score grid entry outside [0, 1]");
  }
}

void ConstraintWeights::validate() const {
  for (double l : {lambda_u, lambda_o, lambda_f}) {
    if (!std::isfinite(l) || l < 0.0) {
      throw ConfigError("constraint weights must be finite and nonnegative");
    }
  }
  if (beam_k < 1) throw ConfigError("beam_k must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw ConfigError("epsilon must lie in (0, 0.5)");
  }
}

GridPenalty loss_unique(const ScoreGrid& grid, const LabelSet& labels,
                        double epsilon) {
  GridPenalty out = zero_penalty(std::span(&grid, 1));
  const int n = grid.length();
  if (n < 2) return out;  // the conjunction over j != i is empty
  Eigen::MatrixXd& grad = out.gradient[0];
  for (int arg : labels.core_indices()) {
    const int col = LabelSet::begin_tag(arg);
    for (int i = 0; i < n; ++i) {
      // min_{j != i} (1 - B_X(u, j)), lowest j on ties.
      int arg_min = -1;
      double rhs = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double v = 1.0 - grid.probs(j, col);
        if (arg_min < 0 || v < rhs) {
          rhs = v;
          arg_min = j;
        }
      }
      const softlogic::PenaltyTerm term =
          softlogic::imply_nll(grid.probs(i, col), rhs, epsilon);
      out.branch = mix_branch(mix_branch(out.branch, arg_min), term.branch);
      if (term.loss == 0.0) continue;
      out.loss += term.loss;
      grad(i, col) += term.gradient[0];
      grad(arg_min, col) -= term.gradient[1];
    }
  }
  return out;
}

RoutedValue span_begin_score(const ScoreGrid& grid, int i, int j, int arg) {
  check_span(grid, i, j);
  return routed_min({begin_lit(grid, arg, i), inside_lit(grid, arg, j),
                     negated(inside_lit(grid, arg, j + 1))});
}

RoutedValue crossing_guard(const ScoreGrid& grid_v, int i, int j, int arg) {
  check_span(grid_v, i, j);
  const RoutedValue next = inside_lit(grid_v, arg, j + 1);
  const RoutedValue q1 =
      negated(routed_min({begin_lit(grid_v, arg, j), next}));
  const RoutedValue q2 =
      routed_max({begin_lit(grid_v, arg, i), inside_lit(grid_v, arg, i),
                  negated(inside_lit(grid_v, arg, j)), negated(next)});
  return routed_min({q1, q2});
}

std::vector<SpanTriple> topk_spans(const ScoreGrid& grid, int arg, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<SpanTriple> spans;
  const int n = grid.length();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      spans.push_back({i, j, arg, span_begin_score(grid, i, j, arg).value});
    }
  }
  // Candidates are generated in (i, j) order, so a stable sort on score
  // alone keeps the lexicographic tie order.
  std::stable_sort(spans.begin(), spans.end(),
                   [](const SpanTriple& a, const SpanTriple& b) {
                     return a.score > b.score;
                   });
  if (static_cast<int>(spans.size()) > k) spans.resize(k);
  return spans;
}

GridPenalty loss_overlap(std::span<const ScoreGrid> grids,
                         const LabelSet& labels, std::optional<int> beam_k,
                         double epsilon) {
  GridPenalty out = zero_penalty(grids);
  if (grids.empty()) return out;
  const int n = grids[0].length();
  for (const ScoreGrid& g : grids) {
    if (g.length() != n) {
      throw std::invalid_argument("grids of one sentence differ in length");
    }
  }
  const int num_grids = static_cast<int>(grids.size());
  const int num_args = labels.num_args();
  if (num_grids * num_args < 2) return out;  // no (v, Y) != (u, X)

  std::vector<SpanTriple> antecedents;
  for (int u = 0; u < num_grids; ++u) {
    for (int x = 0; x < num_args; ++x) {
      if (beam_k) {
        antecedents = topk_spans(grids[u], x, *beam_k);
        for (const SpanTriple& s : antecedents) {
          out.branch = mix_branch(out.branch, (s.start << 16) | s.end);
        }
      } else {
        antecedents.clear();
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) antecedents.push_back({i, j, x, 0.0});
        }
      }
      for (const SpanTriple& s : antecedents) {
        const RoutedValue p = span_begin_score(grids[u], s.start, s.end, x);
        RoutedValue q;
        int q_grid = -1;
        std::uint64_t branch = p.branch;
        for (int v = 0; v < num_grids; ++v) {
          for (int y = 0; y < num_args; ++y) {
            if (v == u && y == x) continue;
            const RoutedValue g = crossing_guard(grids[v], s.start, s.end, y);
            branch = mix_branch(branch, g.branch);
            if (q_grid < 0 || g.value < q.value) {
              q = g;
              q_grid = v;
              branch = mix_branch(branch, v * num_args + y);
            }
          }
        }
        const softlogic::PenaltyTerm term =
            softlogic::imply_nll(p.value, q.value, epsilon);
        out.branch = mix_branch(mix_branch(out.branch, branch), term.branch);
        if (term.loss == 0.0) continue;
        out.loss += term.loss;
        accumulate(out.gradient[u], p, term.gradient[0]);
        accumulate(out.gradient[q_grid], q, term.gradient[1]);
      }
    }
  }
  return out;
}

GridPenalty loss_frame(const ScoreGrid& grid, std::span<const int> allowed,
                       const LabelSet& labels, double epsilon) {
  GridPenalty out = zero_penalty(std::span(&grid, 1));
  std::vector<int> disallowed;
  for (int arg : labels.core_indices()) {
    if (std::find(allowed.begin(), allowed.end(), arg) == allowed.end()) {
      disallowed.push_back(arg);
    }
  }
  if (disallowed.empty() || grid.length() == 0) return out;

  // min over (i, X) of 1 - min(B_X(u,i), I_X(u,i)); first minimum wins.
  RoutedValue rhs;
  bool first = true;
  std::uint64_t branch = 0;
  for (int i = 0; i < grid.length(); ++i) {
    for (int arg : disallowed) {
      const RoutedValue v = negated(
          routed_min({begin_lit(grid, arg, i), inside_lit(grid, arg, i)}));
      branch = mix_branch(branch, v.branch);
      if (first || v.value < rhs.value) {
        rhs = v;
        first = false;
        branch = mix_branch(branch, i * labels.num_args() + arg);
      }
    }
  }
  // Sense(u, k) is the gold sense, so the antecedent is true.
  const softlogic::PenaltyTerm term = softlogic::imply_nll(1.0, rhs.value, epsilon);
  out.branch = mix_branch(branch, term.branch);
  out.loss = term.loss;
  accumulate(out.gradient[0], rhs, term.gradient[1]);
  return out;
}

GridPenalty loss_frame(const ScoreGrid& grid, const std::string& lemma,
                       const std::string& sense, const FrameInventory& frames,
                       const LabelSet& labels, UnknownFramePolicy policy,
                       double epsilon) {
  if (frames.find(lemma, sense) == nullptr) {
    if (policy == UnknownFramePolicy::kError) {
      throw DataError("no roleset for " + lemma + "." + sense);
    }
    logger().warn("no roleset for {}.{}; frame loss skipped", lemma, sense);
    return zero_penalty(std::span(&grid, 1));
  }
  const std::vector<int> allowed = frames.allowed_args(lemma, sense, labels);
  return loss_frame(grid, allowed, labels, epsilon);
}

double combine_loss(double ce, double lu, double lo, double lf,
                    const ConstraintWeights& weights) {
  for (double v : {ce, lu, lo, lf}) {
    if (!std::isfinite(v)) throw NumericError("nonfinite loss");
  }
  return ce + weights.lambda_u * lu + weights.lambda_o * lo +
         weights.lambda_f * lf;
}

}  // namespace rolegrad
