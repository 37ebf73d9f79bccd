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

// Finite-difference verification of every analytic gradient in the library.
//
// Components: L_U, L_O, L_F (over random probability grids), crf_nll (over
// random emissions and transitions) and total_loss, the full training
// objective on a fixed two-sentence batch, checked on 20 random parameters
// per trial.

#ifndef ROLEGRAD_GRADCHECK_SUITE_H_
#define ROLEGRAD_GRADCHECK_SUITE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rolegrad {

inline constexpr double kGradTolerance = 1e-4;
inline constexpr double kEndToEndGradTolerance = 1e-3;
inline constexpr int kEndToEndCoordinates = 20;

const std::vector<std::string>& gradcheck_components();

struct GradcheckOptions {
  std::uint64_t seed = 0;
  int trials = 100;
  double step = 1e-5;
  // Negates the analytic gradient of this component, for testing the harness.
  std::optional<std::string> inject_fault;
};

struct GradcheckRow {
  std::string component;
  int checked = 0;
  int skipped = 0;  // nondifferentiable points drawn and discarded
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Draws random points until `trials` differentiable ones were checked per
// component. Throws std::invalid_argument for trials < 1 or an unknown fault
// component.
std::vector<GradcheckRow> run_gradcheck_suite(const GradcheckOptions& options);

std::string format_gradcheck_table(const std::vector<GradcheckRow>& rows);

}  // namespace rolegrad

#endif  // ROLEGRAD_GRADCHECK_SUITE_H_
