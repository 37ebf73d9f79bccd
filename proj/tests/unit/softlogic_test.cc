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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace rolegrad::softlogic {
namespace {

TEST(GodelAnd, TruthTableUpToArityThree) {
  for (int n = 1; n <= 3; ++n) {
    for (int bits = 0; bits < (1 << n); ++bits) {
      std::vector<double> v;
      bool expect = true;
      for (int k = 0; k < n; ++k) {
        const bool b = (bits >> k) & 1;
        v.push_back(b ? 1.0 : 0.0);
        expect = expect && b;
      }
      EXPECT_EQ(godel_and(v).value, expect ? 1.0 : 0.0);
    }
  }
}

TEST(GodelOr, TruthTableUpToArityThree) {
  for (int n = 1; n <= 3; ++n) {
    for (int bits = 0; bits < (1 << n); ++bits) {
      std::vector<double> v;
      bool expect = false;
      for (int k = 0; k < n; ++k) {
        const bool b = (bits >> k) & 1;
        v.push_back(b ? 1.0 : 0.0);
        expect = expect || b;
      }
      EXPECT_EQ(godel_or(v).value, expect ? 1.0 : 0.0);
    }
  }
}

TEST(GodelAnd, ValueAndLowestIndexRouting) {
  const std::vector<double> v = {0.3, 0.7};
  const SoftValue r = godel_and(v);
  EXPECT_DOUBLE_EQ(r.value, 0.3);
  EXPECT_EQ(r.gradient, (std::vector<double>{1.0, 0.0}));
  const std::vector<double> tie = {0.4, 0.9, 0.4};
  EXPECT_EQ(godel_and(tie).gradient, (std::vector<double>{1.0, 0.0, 0.0}));
  EXPECT_EQ(godel_or(std::vector<double>{0.8, 0.8}).gradient,
            (std::vector<double>{1.0, 0.0}));
}

TEST(GodelAnd, MatchesFiniteDifferences) {
  const PenaltyFn fn = [](std::span<const double> x) {
    const SoftValue s = godel_and(x);
    return PenaltyTerm{s.value, s.gradient, s.branch};
  };
  const std::vector<double> p = {0.3, 0.7};
  const GradcheckResult r = gradcheck(fn, p, 1e-5);
  EXPECT_FALSE(r.nondifferentiable);
  EXPECT_LT(r.max_relative_error, 1e-8);
}

TEST(GodelAnd, EmptyListThrows) {
  EXPECT_THROW(godel_and(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(godel_or(std::vector<double>{}), std::invalid_argument);
}

TEST(Negate, Examples) {
  EXPECT_EQ(negate(0.0).value, 1.0);
  EXPECT_DOUBLE_EQ(negate(0.25).value, 0.75);
  EXPECT_EQ(negate(0.25).gradient, std::vector<double>{-1.0});
  for (double x : {0.0, 0.1, 0.5, 0.93, 1.0}) {
    EXPECT_DOUBLE_EQ(negate(negate(x).value).value, x);
  }
  EXPECT_EQ(negate(1.0).value, 0.0);
}

TEST(ProductImply, Examples) {
  EXPECT_DOUBLE_EQ(product_imply(0.5, 0.25).value, 0.5);
  EXPECT_DOUBLE_EQ(product_imply(0.3, 0.6).value, 1.0);
  EXPECT_DOUBLE_EQ(product_imply(1.0, 1.0).value, 1.0);
  EXPECT_TRUE(std::isfinite(product_imply(0.0, 0.5).value));
}

TEST(ProductImply, BooleanTruthTable) {
  EXPECT_EQ(product_imply(0.0, 0.0).value, 1.0);
  EXPECT_EQ(product_imply(0.0, 1.0).value, 1.0);
  EXPECT_EQ(product_imply(1.0, 1.0).value, 1.0);
  EXPECT_NEAR(product_imply(1.0, 0.0).value, 0.0, 2e-6);
}

TEST(ImplyNll, Examples) {
  EXPECT_NEAR(imply_nll(0.9, 0.2).loss, 1.5041, 1e-4);
  EXPECT_EQ(imply_nll(0.5, 0.5).loss, 0.0);
  EXPECT_EQ(imply_nll(0.05, 0.1).loss, 0.0);
  const PenaltyTerm t = imply_nll(0.9, 0.2);
  EXPECT_NEAR(t.gradient[0], 1.0 / 0.9, 1e-12);
  EXPECT_NEAR(t.gradient[1], -1.0 / 0.2, 1e-12);
}

TEST(ImplyNll, FiniteDifferenceAtWorkedPoint) {
  const PenaltyFn fn = [](std::span<const double> x) {
    return imply_nll(x[0], x[1]);
  };
  const std::vector<double> p = {0.9, 0.2};
  const GradcheckResult r = gradcheck(fn, p, 1e-5);
  EXPECT_FALSE(r.nondifferentiable);
  EXPECT_LT(r.max_relative_error, 1e-4);
}

TEST(ImplyNll, FlatRegionHasZeroGradientBothWays) {
  const PenaltyFn fn = [](std::span<const double> x) {
    return imply_nll(x[0], x[1]);
  };
  const std::vector<double> p = {0.2, 0.6};
  EXPECT_EQ(fn(p).gradient, (std::vector<double>{0.0, 0.0}));
  const GradcheckResult r = gradcheck(fn, p, 1e-5);
  EXPECT_FALSE(r.nondifferentiable);
  EXPECT_EQ(r.max_relative_error, 0.0);
}

TEST(ImplyNll, ZeroIffImplicationHoldsOnRandomPairs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int k = 0; k < 1000; ++k) {
    const double a = u(rng);
    const double b = u(rng);
    const bool zero = imply_nll(a, b).loss == 0.0;
    EXPECT_EQ(zero, product_imply(a, b).value == 1.0);
    EXPECT_EQ(zero, b >= a);
  }
}

TEST(ImplyNll, MonotoneInBothArguments) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int k = 0; k < 1000; ++k) {
    const double a = u(rng), b = u(rng), d = u(rng) * 0.1;
    EXPECT_LE(imply_nll(a, std::min(0.999, b + d)).loss, imply_nll(a, b).loss);
    EXPECT_GE(imply_nll(std::min(0.999, a + d), b).loss, imply_nll(a, b).loss);
  }
}

TEST(ImplyNll, ClampKeepsLogsFinite) {
  EXPECT_TRUE(std::isfinite(imply_nll(1.0, 0.0).loss));
  EXPECT_NEAR(imply_nll(1.0, 0.0).loss, std::log((1 - 1e-6) / 1e-6), 1e-9);
  EXPECT_EQ(imply_nll(0.0, 0.0).loss, 0.0);
}

TEST(Clamp, Rails) {
  EXPECT_EQ(clamp(0.0, 1e-6).value, 1e-6);
  EXPECT_EQ(clamp(0.5, 1e-6).value, 0.5);
  EXPECT_EQ(clamp(1.0, 1e-6).value, 1.0 - 1e-6);
  EXPECT_EQ(clamp(0.5).gradient, std::vector<double>{1.0});
  EXPECT_EQ(clamp(0.0).gradient, std::vector<double>{0.0});
}

TEST(Gradcheck, FlagsKinks) {
  const PenaltyFn fn = [](std::span<const double> x) {
    return imply_nll(x[0], x[1]);
  };
  const std::vector<double> boundary = {0.5, 0.5};
  EXPECT_TRUE(gradcheck(fn, boundary, 1e-5).nondifferentiable);
  const std::vector<double> tie = {0.4, 0.4};
  const PenaltyFn min_fn = [](std::span<const double> x) {
    const SoftValue s = godel_and(x);
    return PenaltyTerm{s.value, s.gradient, s.branch};
  };
  EXPECT_TRUE(gradcheck(min_fn, tie, 1e-5).nondifferentiable);
}

TEST(Gradcheck, RejectsBadStep) {
  const PenaltyFn fn = [](std::span<const double> x) {
    return imply_nll(x[0], x[1]);
  };
  const std::vector<double> p = {0.9, 0.2};
  EXPECT_THROW(gradcheck(fn, p, 0.0), std::invalid_argument);
  EXPECT_THROW(gradcheck(fn, p, 1e-2), std::invalid_argument);
}

TEST(Gradcheck, DetectsWrongGradient) {
  const PenaltyFn fn = [](std::span<const double> x) {
    PenaltyTerm t = imply_nll(x[0], x[1]);
    for (double& g : t.gradient) g = -g;
    return t;
  };
  const std::vector<double> p = {0.9, 0.2};
  EXPECT_GT(gradcheck(fn, p, 1e-5).max_relative_error, 1.0);
}

}  // namespace
}  // namespace rolegrad::softlogic
