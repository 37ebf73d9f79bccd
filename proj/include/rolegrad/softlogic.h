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

// Relaxed Boolean connectives over probabilities.
//
// Literals inside a rule use the Goedel t-norm (min/max/1-a); the top-level
// implication uses the product t-norm, min(1, b/a), and is turned into a
// log-space hinge max(0, log a - log b) so that it can be added to a
// cross-entropy objective. Every operation returns its exact (sub)gradient
// with respect to its inputs.
//
// Each result also carries a branch signature: a hash of every discrete
// choice made while evaluating it (argmin/argmax index, hinge side, clamp
// rail). Two evaluations with equal signatures lie on the same smooth piece,
// which is what the finite-difference checker uses to detect kinks.

#ifndef ROLEGRAD_SOFTLOGIC_H_
#define ROLEGRAD_SOFTLOGIC_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rolegrad::softlogic {

inline constexpr double kDefaultEpsilon = 1e-6;

// A relaxed truth value with d(value)/d(input) for every input.
struct SoftValue {
  double value = 0.0;
  std::vector<double> gradient;
  std::uint64_t branch = 0;
};

// A nonnegative penalty with d(loss)/d(input) for every input.
struct PenaltyTerm {
  double loss = 0.0;
  std::vector<double> gradient;
  std::uint64_t branch = 0;
};

// Folds a discrete decision into a branch signature.
std::uint64_t mix_branch(std::uint64_t signature, std::uint64_t decision);

// Goedel conjunction. The subgradient goes to the lowest-index minimum.
// Throws std::invalid_argument("empty conjunction") on an empty list.
SoftValue godel_and(std::span<const double> values);

// Goedel disjunction. The subgradient goes to the lowest-index maximum.
// Throws std::invalid_argument("empty disjunction") on an empty list.
SoftValue godel_or(std::span<const double> values);

SoftValue negate(double a);

// min(1 - eps, max(eps, p)). Gradient is 1 strictly inside, 0 on a rail.
SoftValue clamp(double p, double epsilon = kDefaultEpsilon);

// Product-t-norm implication min(1, b / a), with a clamped away from zero.
SoftValue product_imply(double a, double b, double epsilon = kDefaultEpsilon);

// Negative log of product_imply: max(0, log a - log b) after clamping both
// arguments to [eps, 1 - eps].
PenaltyTerm imply_nll(double a, double b, double epsilon = kDefaultEpsilon);

using PenaltyFn = std::function<PenaltyTerm(std::span<const double>)>;

struct GradcheckResult {
  // max over coordinates of |analytic - numeric| / max(1, |analytic|).
  double max_relative_error = 0.0;
  int worst_coordinate = -1;
  // True when a central-difference stencil crossed a kink (tie, hinge
  // boundary, or clamp rail). Such points are excluded; the error fields are
  // then left at their defaults.
  bool nondifferentiable = false;
};

// Compares the analytic gradient of fn against central finite differences.
// step must lie in (0, 1e-3].
GradcheckResult gradcheck(const PenaltyFn& fn, std::span<const double> point,
                          double step);

}  // namespace rolegrad::softlogic

#endif  // ROLEGRAD_SOFTLOGIC_H_
