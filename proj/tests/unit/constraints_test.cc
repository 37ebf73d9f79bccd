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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rolegrad/error.h"
#include "rolegrad/frames.h"
#include "rolegrad/labels.h"

namespace rolegrad {
namespace {

const LabelSet& two_labels() {
  static const LabelSet labels({"A0", "A1"}, {"A0", "A1"});
  return labels;
}

// Rows given as {tag: prob}; O receives the remainder.
ScoreGrid make_grid(const LabelSet& labels,
                    const std::vector<std::vector<std::pair<int, double>>>& rows) {
  ScoreGrid g;
  g.probs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                  labels.num_tags());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double rest = 1.0;
    for (const auto& [tag, p] : rows[i]) {
      g.probs(static_cast<Eigen::Index>(i), tag) = p;
      rest -= p;
    }
    g.probs(static_cast<Eigen::Index>(i), LabelSet::kOutside) = rest;
  }
  return g;
}

ScoreGrid random_grid(const LabelSet& labels, int n, std::mt19937_64& rng) {
  std::gamma_distribution<double> gamma(0.5, 1.0);
  ScoreGrid g;
  g.probs.resize(n, labels.num_tags());
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int t = 0; t < labels.num_tags(); ++t) {
      g.probs(i, t) = gamma(rng) + 1e-3;
      s += g.probs(i, t);
    }
    g.probs.row(i) /= s;
  }
  return g;
}

constexpr int kB0 = 1, kB1 = 3, kI1 = 4;

TEST(LossUnique, WorkedThreeTokenExample) {
  const ScoreGrid g = make_grid(two_labels(), {{{kB0, 0.9}}, {{kB0, 0.8}},
                                               {{kB0, 0.05}}});
  const GridPenalty p = loss_unique(g, two_labels());
  EXPECT_NEAR(p.loss, std::log(0.9 / 0.2) + std::log(0.8 / 0.1), 1e-9);
  EXPECT_NEAR(p.loss, 3.5835, 1e-3);
}

TEST(LossUnique, WorkedExampleUnderStandardLabels) {
  const LabelSet labels = LabelSet::standard();
  const ScoreGrid g = make_grid(labels, {{{kB0, 0.9}}, {{kB0, 0.8}},
                                         {{kB0, 0.05}}});
  EXPECT_NEAR(loss_unique(g, labels).loss, 3.5835, 1e-3);
}

TEST(LossUnique, OneHotSatisfiedIsNearZero) {
  const ScoreGrid g = make_grid(two_labels(), {{{kB0, 1.0}}, {{kB0 + 1, 1.0}},
                                               {{kB1, 1.0}}, {}});
  EXPECT_LT(loss_unique(g, two_labels()).loss, 1e-3);
}

TEST(LossUnique, SingleTokenIsVacuous) {
  const ScoreGrid g = make_grid(two_labels(), {{{kB0, 1.0}}});
  EXPECT_EQ(loss_unique(g, two_labels()).loss, 0.0);
}

TEST(LossUnique, IgnoresNonCoreLabels) {
  const LabelSet labels({"A0", "AM-TMP"}, {"A0"});
  const ScoreGrid g = make_grid(labels, {{{3, 1.0}}, {{3, 1.0}}});
  EXPECT_EQ(loss_unique(g, labels).loss, 0.0);
}

TEST(SpanBeginScore, Examples) {
  const ScoreGrid g = make_grid(two_labels(), {{}, {{kB1, 0.8}}, {{kI1, 0.7}},
                                               {{kI1, 0.1}}});
  EXPECT_DOUBLE_EQ(span_begin_score(g, 1, 2, 1).value, 0.7);
  EXPECT_EQ(span_begin_score(g, 0, 2, 1).value, 0.0);
  const ScoreGrid end = make_grid(two_labels(), {{{kB1, 0.6}}, {{kI1, 0.5}}});
  EXPECT_DOUBLE_EQ(span_begin_score(end, 0, 1, 1).value, 0.5);
  EXPECT_THROW(span_begin_score(g, 2, 2, 1), std::invalid_argument);
  EXPECT_THROW(span_begin_score(g, 2, 1, 1), std::invalid_argument);
}

TEST(CrossingGuard, WorkedExample) {
  // Literal values as given; rows need not be normalized for the guard.
  ScoreGrid v;
  v.probs = Eigen::MatrixXd::Zero(5, two_labels().num_tags());
  v.probs(1, kB0) = 0.1;
  v.probs(1, kB0 + 1) = 0.2;
  v.probs(3, kB0) = 0.6;
  v.probs(3, kB0 + 1) = 0.7;
  v.probs(4, kB0 + 1) = 0.9;
  EXPECT_NEAR(crossing_guard(v, 1, 3, 0).value, 0.3, 1e-12);
}

TEST(CrossingGuard, NoMassMeansSatisfied) {
  const ScoreGrid v = make_grid(two_labels(), {{}, {}, {}, {}});
  EXPECT_EQ(crossing_guard(v, 0, 2, 0).value, 1.0);
  const ScoreGrid stop = make_grid(two_labels(), {{{kB0, 0.5}}, {{kB0 + 1, 0.4}},
                                                  {{kB0, 0.9}}, {}});
  EXPECT_EQ(crossing_guard(stop, 0, 2, 0).value, 1.0);
}

TEST(TopkSpans, ArgmaxAndTies) {
  const ScoreGrid g = make_grid(two_labels(), {{}, {{kB1, 0.7}},
                                               {{kB1, 0.4}, {kI1, 0.5}},
                                               {{kI1, 0.4}}});
  const auto top = topk_spans(g, 1, 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].start, 1);
  EXPECT_EQ(top[0].end, 2);
  EXPECT_DOUBLE_EQ(top[0].score, 0.5);

  const ScoreGrid flat = make_grid(two_labels(), {{}, {}, {}, {}});
  const auto all = topk_spans(flat, 0, 100);
  ASSERT_EQ(all.size(), 6u);
  for (std::size_t k = 1; k < all.size(); ++k) {
    EXPECT_LT(std::pair(all[k - 1].start, all[k - 1].end),
              std::pair(all[k].start, all[k].end));
  }
  EXPECT_THROW(topk_spans(g, 0, 0), std::invalid_argument);
}

TEST(TopkSpans, MatchesSortedEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const ScoreGrid g = random_grid(two_labels(), 2 + trial % 5, rng);
    std::vector<SpanTriple> all;
    for (int i = 0; i < g.length(); ++i) {
      for (int j = i + 1; j < g.length(); ++j) {
        all.push_back({i, j, 1, span_begin_score(g, i, j, 1).value});
      }
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      return a.score > b.score;
    });
    const auto top = topk_spans(g, 1, 3);
    ASSERT_EQ(top.size(), std::min<std::size_t>(3, all.size()));
    for (std::size_t k = 0; k < top.size(); ++k) {
      EXPECT_EQ(top[k].start, all[k].start);
      EXPECT_EQ(top[k].end, all[k].end);
    }
  }
}

std::vector<ScoreGrid> overlap_example() {
  return {make_grid(two_labels(), {{}, {{kB1, 0.7}}, {{kI1, 0.8}}, {{kI1, 0.8}}, {}}),
          make_grid(two_labels(), {{}, {{kB0, 0.1}, {kB0 + 1, 0.2}}, {},
                                   {{kB0, 0.2}, {kB0 + 1, 0.7}}, {{kB0 + 1, 0.9}}})};
}

TEST(LossOverlap, WorkedLTerm) {
  const auto grids = overlap_example();
  EXPECT_DOUBLE_EQ(span_begin_score(grids[0], 1, 3, 1).value, 0.7);
  EXPECT_NEAR(crossing_guard(grids[1], 1, 3, 0).value, 0.3, 1e-12);
  EXPECT_NEAR(loss_overlap(grids, two_labels(), 1).loss, std::log(0.7 / 0.3),
              1e-9);
  EXPECT_NEAR(loss_overlap(grids, two_labels(), 1).loss, 0.8473, 1e-3);
}

TEST(LossOverlap, OneHotNestedOrDisjointIsZero) {
  const std::vector<ScoreGrid> grids = {
      make_grid(two_labels(), {{{kB0, 1}}, {{kB0 + 1, 1}}, {{kB0 + 1, 1}}, {}}),
      make_grid(two_labels(), {{}, {{kB1, 1}}, {{kI1, 1}}, {{kB0, 1}}})};
  EXPECT_LT(loss_overlap(grids, two_labels(), std::nullopt).loss, 1e-3);
}

TEST(LossOverlap, SingleLabelSinglePredicateIsZero) {
  const LabelSet one({"A0"}, {"A0"});
  const std::vector<ScoreGrid> grids = {
      make_grid(one, {{{1, 0.9}}, {{2, 0.9}}, {{2, 0.1}}})};
  EXPECT_EQ(loss_overlap(grids, one, std::nullopt).loss, 0.0);
}

TEST(LossOverlap, LargeBeamEqualsExhaustive) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<ScoreGrid> grids = {random_grid(two_labels(), n, rng),
                                    random_grid(two_labels(), n, rng)};
    const double full = loss_overlap(grids, two_labels(), std::nullopt).loss;
    EXPECT_NEAR(loss_overlap(grids, two_labels(), 64).loss, full, 1e-12);
  }
}

TEST(LossOverlap, NondecreasingInBeam) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<ScoreGrid> grids = {random_grid(two_labels(), 6, rng),
                                    random_grid(two_labels(), 6, rng)};
    double prev = 0.0;
    for (int k : {1, 2, 4, 6}) {
      const double v = loss_overlap(grids, two_labels(), k).loss;
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
  }
}

TEST(LossOverlap, GridsMustAgreeInLength) {
  std::mt19937_64 rng(1);
  std::vector<ScoreGrid> grids = {random_grid(two_labels(), 3, rng),
                                  random_grid(two_labels(), 4, rng)};
  EXPECT_THROW(loss_overlap(grids, two_labels(), 4), std::invalid_argument);
}

TEST(LossFrame, WorkedExample) {
  const LabelSet labels = LabelSet::standard();
  ScoreGrid g;
  g.probs = Eigen::MatrixXd::Zero(3, labels.num_tags());
  const int a2 = labels.arg_index("A2");
  g.probs(1, LabelSet::begin_tag(a2)) = 0.7;
  g.probs(1, LabelSet::inside_tag(a2)) = 0.6;
  g.probs(2, LabelSet::begin_tag(a2)) = 0.2;
  g.probs(2, LabelSet::inside_tag(a2)) = 0.3;
  const std::vector<int> allowed = {labels.arg_index("A0"),
                                    labels.arg_index("A1")};
  EXPECT_NEAR(loss_frame(g, allowed, labels).loss, -std::log(0.4), 1e-5);
  EXPECT_NEAR(loss_frame(g, allowed, labels).loss, 0.9163, 1e-3);
}

TEST(LossFrame, ZeroCases) {
  const LabelSet labels = LabelSet::standard();
  const ScoreGrid g = make_grid(labels, {{{1, 0.5}, {2, 0.4}}, {}});
  const std::vector<int> a0 = {labels.arg_index("A0")};
  EXPECT_LT(loss_frame(g, a0, labels).loss, 1e-5);
  std::vector<int> all;
  for (int c : labels.core_indices()) all.push_back(c);
  std::mt19937_64 rng(3);
  EXPECT_EQ(loss_frame(random_grid(labels, 4, rng), all, labels).loss, 0.0);
}

TEST(LossFrame, UnknownRolesetPolicy) {
  const LabelSet labels = LabelSet::standard();
  FrameInventory frames;
  frames.add("run", "01", {"A0"}, labels);
  std::mt19937_64 rng(3);
  const ScoreGrid g = random_grid(labels, 3, rng);
  EXPECT_EQ(loss_frame(g, "walk", "01", frames, labels,
                       UnknownFramePolicy::kSkip).loss, 0.0);
  EXPECT_THROW(loss_frame(g, "walk", "01", frames, labels,
                          UnknownFramePolicy::kError),
               DataError);
  EXPECT_GT(loss_frame(g, "run", "01", frames, labels,
                       UnknownFramePolicy::kError).loss, 0.0);
}

TEST(Losses, NonnegativeOnRandomGrids) {
  const LabelSet labels = LabelSet::standard();
  std::mt19937_64 rng(4);
  const std::vector<int> allowed = {0, 1};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<ScoreGrid> grids = {random_grid(labels, 5, rng),
                                    random_grid(labels, 5, rng)};
    EXPECT_GE(loss_unique(grids[0], labels).loss, 0.0);
    EXPECT_GE(loss_overlap(grids, labels, 4).loss, 0.0);
    EXPECT_GE(loss_frame(grids[0], allowed, labels).loss, 0.0);
  }
}

TEST(Losses, InvariantUnderLabelOrder) {
  const LabelSet ab({"A0", "A1"}, {"A0", "A1"});
  const LabelSet ba({"A1", "A0"}, {"A1", "A0"});
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ScoreGrid> g = {random_grid(ab, 5, rng), random_grid(ab, 5, rng)};
    std::vector<ScoreGrid> h = g;
    for (ScoreGrid& x : h) {
      x.probs.col(1).swap(x.probs.col(3));
      x.probs.col(2).swap(x.probs.col(4));
    }
    EXPECT_NEAR(loss_unique(g[0], ab).loss, loss_unique(h[0], ba).loss, 1e-12);
    EXPECT_NEAR(loss_overlap(g, ab, std::nullopt).loss,
                loss_overlap(h, ba, std::nullopt).loss, 1e-12);
    const std::vector<int> only0 = {0};
    const std::vector<int> only0_swapped = {1};
    EXPECT_NEAR(loss_frame(g[0], only0, ab).loss,
                loss_frame(h[0], only0_swapped, ba).loss, 1e-12);
  }
}

TEST(CombineLoss, Examples) {
  ConstraintWeights w;
  w.lambda_u = 1.0;
  EXPECT_DOUBLE_EQ(combine_loss(1.0, 0.5, 0, 0, w), 1.5);
  EXPECT_DOUBLE_EQ(combine_loss(1.25, 9, 9, 9, ConstraintWeights{}), 1.25);
  ConstraintWeights row{2.0, 0.5, 0.5};
  EXPECT_DOUBLE_EQ(combine_loss(2.0, 1.0, 2.0, 3.0, row), 6.5);
  EXPECT_THROW(combine_loss(NAN, 0, 0, 0, w), NumericError);
  EXPECT_THROW(combine_loss(1, INFINITY, 0, 0, w), NumericError);
}

TEST(ConstraintWeights, Validation) {
  ConstraintWeights w;
  EXPECT_NO_THROW(w.validate());
  w.lambda_o = -1;
  EXPECT_THROW(w.validate(), ConfigError);
  w = {};
  w.beam_k = 0;
  EXPECT_THROW(w.validate(), ConfigError);
  w = {};
  w.epsilon = 0.5;
  EXPECT_THROW(w.validate(), ConfigError);
}

TEST(ScoreGrid, Validation) {
  ScoreGrid g = make_grid(two_labels(), {{{1, 0.5}}, {}});
  EXPECT_NO_THROW(g.validate());
  g.probs(0, 0) = 0.6;
  EXPECT_THROW(g.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace rolegrad
