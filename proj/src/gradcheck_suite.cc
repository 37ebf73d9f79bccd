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

#include "rolegrad/gradcheck_suite.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <stdexcept>

#include "rolegrad/constraints.h"
#include "rolegrad/crf.h"
#include "rolegrad/labels.h"
#include "rolegrad/softlogic.h"
#include "rolegrad/tagger.h"

namespace rolegrad {

namespace {

using softlogic::PenaltyFn;
using softlogic::PenaltyTerm;

// Entries stay at least this far from 0 so that the third derivative of the
// log terms does not swamp the central difference.
constexpr double kFloor = 0.02;

const LabelSet& small_labels() {
  static const LabelSet labels({"A0", "A1", "A2", "AM-TMP"}, {"A0", "A1", "A2"});
  return labels;
}

// Row-wise distributions from Gaussian logits; `boost` lists (row, col)
// entries that get a large logit bump.
std::vector<double> random_rows(int rows, int cols, std::mt19937_64& rng,
                                const std::vector<std::pair<int, int>>& boost = {}) {
  std::normal_distribution<double> normal(0.0, 2.0);
  std::vector<double> out;
  for (int r = 0; r < rows; ++r) {
    std::vector<double> e(cols);
    double sum = 0.0;
    for (int c = 0; c < cols; ++c) {
      double logit = normal(rng);
      for (const auto& [br, bc] : boost) {
        if (br == r && bc == c) logit += 4.0;
      }
      e[c] = std::exp(logit);
      sum += e[c];
    }
    for (double x : e) out.push_back(kFloor + (1.0 - cols * kFloor) * x / sum);
  }
  return out;
}

ScoreGrid grid_from(std::span<const double> x, int offset, int rows, int cols) {
  ScoreGrid g;
  g.probs.resize(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) g.probs(r, c) = x[offset + r * cols + c];
  }
  return g;
}

void append_rowmajor(const Eigen::MatrixXd& m, std::vector<double>& out) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
}

PenaltyTerm to_term(const GridPenalty& p) {
  PenaltyTerm t{p.loss, {}, p.branch};
  for (const auto& g : p.gradient) append_rowmajor(g, t.gradient);
  return t;
}

struct Problem {
  PenaltyFn fn;
  std::vector<double> point;
};

// Both L_U and L_F sample with a planted violation so the hinge is active.
Problem unique_problem(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(2, 5)(rng);
  const int t = small_labels().num_tags();
  const int x = std::uniform_int_distribution<int>(0, 2)(rng);
  const int i = std::uniform_int_distribution<int>(0, n - 2)(rng);
  const int j = std::uniform_int_distribution<int>(i + 1, n - 1)(rng);
  const std::vector<std::pair<int, int>> boost = {{i, LabelSet::begin_tag(x)},
                                                  {j, LabelSet::begin_tag(x)}};
  return {[n, t](std::span<const double> x) {
            return to_term(loss_unique(grid_from(x, 0, n, t), small_labels()));
          },
          random_rows(n, t, rng, boost)};
}

// Plants a likely X span (i, j) in the first grid and a Y span running
// through j and j + 1 in the second, so the hinge is active at many points.
Problem overlap_problem(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(3, 5)(rng);
  const LabelSet& labels = small_labels();
  const int t = labels.num_tags();
  std::uniform_int_distribution<int> arg(0, labels.num_args() - 1);
  const int i = std::uniform_int_distribution<int>(0, n - 3)(rng);
  const int j = std::uniform_int_distribution<int>(i + 1, n - 2)(rng);
  const int x = arg(rng);
  const int y = arg(rng);
  std::vector<std::pair<int, int>> boost = {
      {i, LabelSet::begin_tag(x)},
      {j, LabelSet::inside_tag(x)},
      {n + j, LabelSet::inside_tag(y)},
      {n + j + 1, LabelSet::inside_tag(y)}};
  std::vector<double> point = random_rows(2 * n, t, rng, boost);
  return {[n, t](std::span<const double> x) {
            const std::vector<ScoreGrid> grids = {grid_from(x, 0, n, t),
                                                  grid_from(x, n * t, n, t)};
            return to_term(loss_overlap(grids, small_labels(), 4));
          },
          std::move(point)};
}

Problem frame_problem(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(2, 5)(rng);
  const int t = small_labels().num_tags();
  const int x = std::uniform_int_distribution<int>(1, 2)(rng);
  const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
  const std::vector<std::pair<int, int>> boost = {{i, LabelSet::begin_tag(x)},
                                                  {i, LabelSet::inside_tag(x)}};
  return {[n, t](std::span<const double> x) {
            const std::vector<int> allowed = {0};
            return to_term(
                loss_frame(grid_from(x, 0, n, t), allowed, small_labels()));
          },
          random_rows(n, t, rng, boost)};
}

std::vector<int> random_valid_tags(int n, int num_tags, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> tag(0, num_tags - 1);
  std::vector<int> tags;
  int prev = -1;
  for (int i = 0; i < n; ++i) {
    int next = tag(rng);
    while (!LabelSet::allowed_transition(prev, next)) next = tag(rng);
    tags.push_back(next);
    prev = next;
  }
  return tags;
}

Problem crf_problem(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(1, 5)(rng);
  const int t = small_labels().num_tags();
  const std::vector<int> gold = random_valid_tags(n, t, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> point(n * t + (t + 2) * (t + 2));
  for (double& x : point) x = normal(rng);
  return {[n, t, gold](std::span<const double> x) {
            Eigen::MatrixXd em(n, t);
            Eigen::MatrixXd tr(t + 2, t + 2);
            int k = 0;
            for (int r = 0; r < n; ++r) {
              for (int c = 0; c < t; ++c) em(r, c) = x[k++];
            }
            for (int r = 0; r < t + 2; ++r) {
              for (int c = 0; c < t + 2; ++c) tr(r, c) = x[k++];
            }
            const CrfNll out =
                crf_nll(em, gold, tr + transition_mask(t, true));
            PenaltyTerm term{out.nll, {}, 0};
            append_rowmajor(out.d_emissions, term.gradient);
            append_rowmajor(out.d_transitions, term.gradient);
            return term;
          },
          std::move(point)};
}

Tagger tiny_tagger(std::uint64_t seed) {
  std::vector<std::string> words = {"w0", "w1", "w2", "w3", "w4", "w5"};
  ModelConfig config;
  config.embed_dim = 6;
  config.hidden_dim = 8;
  Tagger tagger = Tagger::create(small_labels(), Vocabulary::from_tokens(words),
                                 config, seed);
  std::mt19937_64 rng(seed ^ 0x5eedULL);
  std::normal_distribution<double> normal(0.0, 0.3);
  for (int p : {kPredicateB, kArgumentB, kPairB1, kPairB2, kOutputB,
                kTransitions}) {
    for (Eigen::Index i = 0; i < tagger.params[p].size(); ++i) {
      tagger.params[p].data()[i] = normal(rng);
    }
  }
  return tagger;
}

std::vector<EncodedSentence> fixed_batch() {
  const LabelSet& l = small_labels();
  auto tags = [&](std::initializer_list<const char*> names) {
    std::vector<int> out;
    for (const char* n : names) out.push_back(l.tag_index(n));
    return out;
  };
  EncodedSentence a;
  a.id = 0;
  a.tokens = {1, 2, 3, 4, 5};
  a.propositions.push_back(
      {1, tags({"B-A0", "O", "B-A1", "I-A1", "O"}), std::vector<int>{0, 1}});
  a.propositions.push_back(
      {4, tags({"O", "O", "B-A0", "I-A0", "B-AM-TMP"}), std::vector<int>{0}});
  EncodedSentence b;
  b.id = 1;
  b.tokens = {6, 3, 1, 2};
  b.propositions.push_back(
      {2, tags({"B-A2", "I-A2", "O", "B-A1"}), std::vector<int>{1, 2}});
  return {a, b};
}

Problem total_loss_problem(std::mt19937_64& rng, std::uint64_t seed) {
  auto tagger = std::make_shared<Tagger>(tiny_tagger(seed));
  std::vector<std::pair<int, Eigen::Index>> coords;
  std::vector<double> point;
  std::uniform_int_distribution<int> which(0, kNumParams - 1);
  while (static_cast<int>(coords.size()) < kEndToEndCoordinates) {
    const int p = which(rng);
    const Eigen::Index size = tagger->params[p].size();
    const Eigen::Index i =
        std::uniform_int_distribution<Eigen::Index>(0, size - 1)(rng);
    const std::pair<int, Eigen::Index> c{p, i};
    if (std::find(coords.begin(), coords.end(), c) != coords.end()) continue;
    if (p == kTransitions &&
        !std::isfinite(tagger->params.transition_scores().data()[i])) {
      continue;
    }
    coords.push_back(c);
    point.push_back(tagger->params[p].data()[i]);
  }
  auto batch = std::make_shared<std::vector<EncodedSentence>>(fixed_batch());
  return {[tagger, batch, coords](std::span<const double> x) {
            Tagger local = *tagger;
            for (std::size_t k = 0; k < coords.size(); ++k) {
              local.params[coords[k].first].data()[coords[k].second] = x[k];
            }
            SentenceObjectiveOptions opts;
            opts.weights.lambda_u = 1.0;
            opts.weights.lambda_o = 0.5;
            opts.weights.lambda_f = 0.5;
            const SentenceObjective obj =
                batch_objective(local, *batch, opts);
            PenaltyTerm term{obj.total, {}, obj.branch};
            for (const auto& [p, i] : coords) {
              term.gradient.push_back(obj.gradients[p].data()[i]);
            }
            return term;
          },
          std::move(point)};
}

}  // namespace

const std::vector<std::string>& gradcheck_components() {
  static const std::vector<std::string> kComponents = {"L_U", "L_O", "L_F",
                                                       "crf_nll", "total_loss"};
  return kComponents;
}

std::vector<GradcheckRow> run_gradcheck_suite(const GradcheckOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const auto& names = gradcheck_components();
  if (options.inject_fault &&
      std::find(names.begin(), names.end(), *options.inject_fault) ==
          names.end()) {
    throw std::invalid_argument("unknown gradcheck component " +
                                *options.inject_fault);
  }
  std::vector<GradcheckRow> rows;
  for (std::size_t c = 0; c < names.size(); ++c) {
    const std::string& name = names[c];
    GradcheckRow row;
    row.component = name;
    row.tolerance = name == "total_loss" ? kEndToEndGradTolerance : kGradTolerance;
    std::mt19937_64 rng(softlogic::mix_branch(options.seed, c));
    const bool flip = options.inject_fault == name;
    const int max_draws = 20 * options.trials;
    for (int draw = 0; draw < max_draws && row.checked < options.trials;
         ++draw) {
      Problem prob;
      if (name == "L_U") {
        prob = unique_problem(rng);
      } else if (name == "L_O") {
        prob = overlap_problem(rng);
      } else if (name == "L_F") {
        prob = frame_problem(rng);
      } else if (name == "crf_nll") {
        prob = crf_problem(rng);
      } else {
        prob = total_loss_problem(rng, softlogic::mix_branch(options.seed, draw));
      }
      PenaltyFn fn = prob.fn;
      if (flip) {
        fn = [inner = prob.fn](std::span<const double> x) {
          PenaltyTerm t = inner(x);
          for (double& g : t.gradient) g = -g;
          return t;
        };
      }
      const softlogic::GradcheckResult r =
          softlogic::gradcheck(fn, prob.point, options.step);
      if (r.nondifferentiable) {
        ++row.skipped;
        continue;
      }
      ++row.checked;
      row.max_error = std::max(row.max_error, r.max_relative_error);
    }
    row.pass = row.checked == options.trials && row.max_error < row.tolerance;
    rows.push_back(row);
  }
  return rows;
}

std::string format_gradcheck_table(const std::vector<GradcheckRow>& rows) {
  std::string out = "component   checked  skipped  max_rel_error  tolerance  result\n";
  char buf[160];
  for (const GradcheckRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-10s  %7d  %7d  %13.3e  %9.0e  %s\n",
                  r.component.c_str(), r.checked, r.skipped, r.max_error,
                  r.tolerance, r.pass ? "PASS" : "FAIL");
    out += buf;
  }
  return out;
}

}  // namespace rolegrad
