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

// First-order linear-chain CRF over BIO tags.
//
// Transition scores live in a (T + 2) x (T + 2) matrix indexed [from][to]
// with two extra states: start (row T) and stop (column T + 1). Entries that
// are -infinity forbid the move.

#ifndef ROLEGRAD_CRF_H_
#define ROLEGRAD_CRF_H_

#include <span>

#include <Eigen/Dense>

namespace rolegrad {

inline int crf_start_state(int num_tags) { return num_tags; }
inline int crf_stop_state(int num_tags) { return num_tags + 1; }

// 0 for usable moves, -inf for structurally impossible ones (into start,
// out of stop, start -> stop) and, when `hard_bio` is set, for every move
// into I-X from anything but B-X / I-X.
Eigen::MatrixXd transition_mask(int num_tags, bool hard_bio);

// Score of one tag path: start, emissions, transitions, stop.
double path_score(const Eigen::MatrixXd& emissions, std::span<const int> tags,
                  const Eigen::MatrixXd& transitions);

struct CrfNll {
  double nll = 0.0;
  Eigen::MatrixXd d_emissions;    // length x T
  Eigen::MatrixXd d_transitions;  // (T + 2) x (T + 2)
};

// Negative log-likelihood of `gold` under the chain (forward algorithm in log
// space) and its gradient from forward-backward marginals. Throws
// std::invalid_argument("gold violates transition constraints") when the gold
// path uses a forbidden move.
CrfNll crf_nll(const Eigen::MatrixXd& emissions, std::span<const int> gold,
               const Eigen::MatrixXd& transitions);

}  // namespace rolegrad

#endif  // ROLEGRAD_CRF_H_
