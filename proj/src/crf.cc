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

#include "rolegrad/crf.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rolegrad/labels.h"

namespace rolegrad {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const Eigen::VectorXd& v) {
  const double m = v.maxCoeff();
  if (m == kNegInf) return kNegInf;
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

Eigen::MatrixXd transition_mask(int num_tags, bool hard_bio) {
  const int start = crf_start_state(num_tags);
  const int stop = crf_stop_state(num_tags);
  Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(num_tags + 2, num_tags + 2);
  mask.col(start).setConstant(kNegInf);
  mask.row(stop).setConstant(kNegInf);
  mask(start, stop) = kNegInf;
  if (hard_bio) {
    for (int next = 0; next < num_tags; ++next) {
      if (!LabelSet::is_inside(next)) continue;
      mask(start, next) = kNegInf;
      for (int prev = 0; prev < num_tags; ++prev) {
        if (!LabelSet::allowed_transition(prev, next)) mask(prev, next) = kNegInf;
      }
    }
  }
  return mask;
}

double path_score(const Eigen::MatrixXd& emissions, std::span<const int> tags,
                  const Eigen::MatrixXd& transitions) {
  const int num_tags = static_cast<int>(emissions.cols());
  int prev = crf_start_state(num_tags);
  double score = 0.0;
  for (std::size_t t = 0; t < tags.size(); ++t) {
    score += transitions(prev, tags[t]) + emissions(t, tags[t]);
    prev = tags[t];
  }
  return score + transitions(prev, crf_stop_state(num_tags));
}

CrfNll crf_nll(const Eigen::MatrixXd& emissions, std::span<const int> gold,
               const Eigen::MatrixXd& transitions) {
  const int n = static_cast<int>(emissions.rows());
  const int num_tags = static_cast<int>(emissions.cols());
  if (n == 0) throw std::invalid_argument("empty sequence");
  if (static_cast<int>(gold.size()) != n) {
    throw std::invalid_argument("gold length does not match emissions");
  }
  const int start = crf_start_state(num_tags);
  const int stop = crf_stop_state(num_tags);
  const Eigen::MatrixXd inner = transitions.topLeftCorner(num_tags, num_tags);

  const double gold_score = path_score(emissions, gold, transitions);
  if (!std::isfinite(gold_score)) {
    throw std::invalid_argument("gold violates transition constraints");
  }

  // alpha(t, y): log-sum of all prefixes ending in y at t, emission included.
  Eigen::MatrixXd alpha(n, num_tags);
  Eigen::MatrixXd beta(n, num_tags);
  Eigen::VectorXd scratch(num_tags);
  for (int y = 0; y < num_tags; ++y) {
    alpha(0, y) = transitions(start, y) + emissions(0, y);
  }
  for (int t = 1; t < n; ++t) {
    for (int y = 0; y < num_tags; ++y) {
      scratch = alpha.row(t - 1).transpose() + inner.col(y);
      alpha(t, y) = log_sum_exp(scratch) + emissions(t, y);
    }
  }
  for (int y = 0; y < num_tags; ++y) beta(n - 1, y) = transitions(y, stop);
  for (int t = n - 2; t >= 0; --t) {
    for (int y = 0; y < num_tags; ++y) {
      scratch = inner.row(y).transpose() + emissions.row(t + 1).transpose() +
                beta.row(t + 1).transpose();
      beta(t, y) = log_sum_exp(scratch);
    }
  }
  scratch = alpha.row(n - 1).transpose() + beta.row(n - 1).transpose();
  const double log_z = log_sum_exp(scratch);

  CrfNll out;
  out.nll = log_z - gold_score;
  out.d_emissions = ((alpha + beta).array() - log_z).exp().matrix();
  out.d_transitions = Eigen::MatrixXd::Zero(num_tags + 2, num_tags + 2);
  for (int y = 0; y < num_tags; ++y) {
    out.d_transitions(start, y) = out.d_emissions(0, y);
    out.d_transitions(y, stop) = out.d_emissions(n - 1, y);
  }
  for (int t = 1; t < n; ++t) {
    for (int a = 0; a < num_tags; ++a) {
      if (alpha(t - 1, a) == kNegInf) continue;
      for (int b = 0; b < num_tags; ++b) {
        const double lp = alpha(t - 1, a) + inner(a, b) + emissions(t, b) +
                          beta(t, b) - log_z;
        if (lp != kNegInf) out.d_transitions(a, b) += std::exp(lp);
      }
    }
  }
  int prev = start;
  for (int t = 0; t < n; ++t) {
    out.d_emissions(t, gold[t]) -= 1.0;
    out.d_transitions(prev, gold[t]) -= 1.0;
    prev = gold[t];
  }
  out.d_transitions(prev, stop) -= 1.0;
  return out;
}

}  // namespace rolegrad
