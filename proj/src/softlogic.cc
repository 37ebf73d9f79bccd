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

#include "rolegrad/softlogic.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rolegrad::softlogic {

std::uint64_t mix_branch(std::uint64_t signature, std::uint64_t decision) {
  // splitmix64 finalizer over the combined word.
  std::uint64_t z = signature ^ (decision + 0x9e3779b97f4a7c15ULL +
                                 (signature << 6) + (signature >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Index of the extreme element; ties resolve to the lowest index.
template <typename Better>
SoftValue select(std::span<const double> values, Better better,
                 std::uint64_t tag) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (better(values[i], values[best])) best = i;
  }
  SoftValue out;
  out.value = values[best];
  out.gradient.assign(values.size(), 0.0);
  out.gradient[best] = 1.0;
  out.branch = mix_branch(tag, best);
  return out;
}

}  // namespace

SoftValue godel_and(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("empty conjunction");
  return select(values, [](double a, double b) { return a < b; }, 1);
}

SoftValue godel_or(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("empty disjunction");
  return select(values, [](double a, double b) { return a > b; }, 2);
}

SoftValue negate(double a) { return {1.0 - a, {-1.0}, 3}; }

SoftValue clamp(double p, double epsilon) {
  if (p <= epsilon) return {epsilon, {0.0}, mix_branch(4, 0)};
  if (p >= 1.0 - epsilon) return {1.0 - epsilon, {0.0}, mix_branch(4, 2)};
  return {p, {1.0}, mix_branch(4, 1)};
}

SoftValue product_imply(double a, double b, double epsilon) {
  const SoftValue ca = clamp(a, epsilon);
  const SoftValue cb = clamp(b, epsilon);
  SoftValue out;
  out.gradient.assign(2, 0.0);
  if (cb.value >= ca.value) {
    out.value = 1.0;
    out.branch = mix_branch(ca.branch, 0);
    return out;
  }
  out.value = cb.value / ca.value;
  out.gradient[0] = -cb.value / (ca.value * ca.value) * ca.gradient[0];
  out.gradient[1] = cb.gradient[0] / ca.value;
  out.branch = mix_branch(mix_branch(ca.branch, cb.branch), 1);
  return out;
}

PenaltyTerm imply_nll(double a, double b, double epsilon) {
  const SoftValue ca = clamp(a, epsilon);
  const SoftValue cb = clamp(b, epsilon);
  const double margin = std::log(ca.value) - std::log(cb.value);
  PenaltyTerm out;
  out.gradient.assign(2, 0.0);
  const std::uint64_t rails = mix_branch(ca.branch, cb.branch);
  if (margin <= 0.0) {
    out.branch = mix_branch(rails, 0);
    return out;
  }
  out.loss = margin;
  out.gradient[0] = ca.gradient[0] / ca.value;
  out.gradient[1] = -cb.gradient[0] / cb.value;
  out.branch = mix_branch(rails, 1);
  return out;
}

GradcheckResult gradcheck(const PenaltyFn& fn, std::span<const double> point,
                          double step) {
  if (!(step > 0.0 && step <= 1e-3)) {
    throw std::invalid_argument("gradcheck step must lie in (0, 1e-3]");
  }
  const PenaltyTerm center = fn(point);
  std::vector<double> x(point.begin(), point.end());
  GradcheckResult result;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double saved = x[k];
    x[k] = saved + step;
    const PenaltyTerm plus = fn(x);
    x[k] = saved - step;
    const PenaltyTerm minus = fn(x);
    x[k] = saved;
    if (plus.branch != center.branch || minus.branch != center.branch) {
      return GradcheckResult{0.0, -1, true};
    }
    const double numeric = (plus.loss - minus.loss) / (2.0 * step);
    const double analytic = center.gradient[k];
    const double err =
        std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
    if (err > result.max_relative_error || result.worst_coordinate < 0) {
      result.max_relative_error = std::max(result.max_relative_error, err);
      result.worst_coordinate = static_cast<int>(k);
    }
  }
  return result;
}

}  // namespace rolegrad::softlogic
