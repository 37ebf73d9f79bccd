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

#ifndef ROLEGRAD_DECODE_H_
#define ROLEGRAD_DECODE_H_

#include <vector>

#include <Eigen/Dense>

namespace rolegrad {

struct ViterbiPath {
  std::vector<int> tags;
  double score = 0.0;
};

// Highest-scoring tag path under `transitions` (layout as in crf.h). Forbidden
// moves carry -inf, so the result is BIO-valid whenever the mask bans invalid
// moves. Ties go to the lowest tag index, both at each backpointer and at the
// final state.
ViterbiPath viterbi(const Eigen::MatrixXd& emissions,
                    const Eigen::MatrixXd& transitions);

}  // namespace rolegrad

#endif  // ROLEGRAD_DECODE_H_
