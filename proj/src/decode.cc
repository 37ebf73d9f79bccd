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

#include "rolegrad/decode.h"

#include <limits>

#include "rolegrad/crf.h"

namespace rolegrad {

ViterbiPath viterbi(const Eigen::MatrixXd& emissions,
                    const Eigen::MatrixXd& transitions) {
  const int n = static_cast<int>(emissions.rows());
  const int num_tags = static_cast<int>(emissions.cols());
  ViterbiPath out;
  if (n == 0) return out;
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const int start = crf_start_state(num_tags);
  const int stop = crf_stop_state(num_tags);

  Eigen::VectorXd score(num_tags);
  Eigen::VectorXd next(num_tags);
  std::vector<int> back(static_cast<std::size_t>(n) * num_tags, 0);
  for (int y = 0; y < num_tags; ++y) {
    score(y) = transitions(start, y) + emissions(0, y);
  }
  for (int t = 1; t < n; ++t) {
    for (int y = 0; y < num_tags; ++y) {
      double best = kNegInf;
      int best_prev = 0;
      for (int p = 0; p < num_tags; ++p) {
        const double s = score(p) + transitions(p, y);
        if (s > best) {
          best = s;
          best_prev = p;
        }
      }
      next(y) = best + emissions(t, y);
      back[static_cast<std::size_t>(t) * num_tags + y] = best_prev;
    }
    score.swap(next);
  }
  double best = kNegInf;
  int last = 0;
  for (int y = 0; y < num_tags; ++y) {
    const double s = score(y) + transitions(y, stop);
    if (s > best) {
      best = s;
      last = y;
    }
  }
  out.score = best;
  out.tags.resize(n);
  out.tags[n - 1] = last;
  for (int t = n - 1; t > 0; --t) {
    out.tags[t - 1] = back[static_cast<std::size_t>(t) * num_tags + out.tags[t]];
  }
  return out;
}

}  // namespace rolegrad
