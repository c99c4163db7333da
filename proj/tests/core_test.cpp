//
// Copyright 2026 The dpamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpamp/core.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

namespace dpamp {
namespace {

TEST(PrivacyBudgetTest, Validation) {
  EXPECT_NO_THROW(PrivacyBudget(0.1, 0.0));
  EXPECT_NO_THROW(PrivacyBudget(1e-30, 0.9999));
  EXPECT_THROW(PrivacyBudget(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(PrivacyBudget(-1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(PrivacyBudget(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(PrivacyBudget(1.0, -0.1), std::invalid_argument);
  EXPECT_THROW(PrivacyBudget(std::nan(""), 0.0), std::invalid_argument);
}

TEST(PopulationTest, RejectsBadInputs) {
  EXPECT_THROW(Population({}), std::invalid_argument);
  EXPECT_THROW(Population({1.0, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(Population({1.0, std::numeric_limits<double>::infinity()}),
               std::invalid_argument);
  EXPECT_THROW(Population({0.5}, Bounds{1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(Population({2.0}, Bounds{0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(Population({-0.5, 0.5}, Bounds{0.0, 1.0}), std::invalid_argument);
  EXPECT_NO_THROW(Population({0.0, 1.0}, Bounds{0.0, 1.0}));
}

TEST(PopulationTest, StatsHandComputed) {
  const PopulationStats s = population_stats(Population({1, 2, 3}));
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.median, 2.0);
  EXPECT_DOUBLE_EQ(s.variance, 1.0);
}

TEST(PopulationTest, StatsConstantData) {
  const PopulationStats s = population_stats(Population({0, 0, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(s.mean, 0.0);
  EXPECT_DOUBLE_EQ(s.median, 0.0);
  EXPECT_DOUBLE_EQ(s.variance, 0.0);
}

TEST(PopulationTest, StatsPowersOfTwo) {
  // Independent route: sum of squares minus N * mean^2.
  const std::vector<double> v{1, 2, 4, 8, 16};
  double sum = 0.0, sum_sq = 0.0;
  for (double x : v) {
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / 5.0;
  const double expected_var = (sum_sq - 5.0 * mean * mean) / 4.0;
  const PopulationStats s = population_stats(Population(v));
  EXPECT_DOUBLE_EQ(s.median, 4.0);
  EXPECT_NEAR(s.variance, expected_var, 1e-12);
  EXPECT_NEAR(s.variance, 37.2, 1e-12);
}

TEST(PopulationTest, EvenMedianIsMidpoint) {
  const PopulationStats s = population_stats(Population({1, 2, 3, 10}));
  EXPECT_DOUBLE_EQ(s.median, 2.5);
}

TEST(LaplaceTest, CdfAtLocation) {
  EXPECT_DOUBLE_EQ(laplace_cdf(0.0, {0.0, 1.0}), 0.5);
  EXPECT_DOUBLE_EQ(laplace_cdf(3.7, {3.7, 0.25}), 0.5);
}

TEST(LaplaceTest, CdfQuarterPoints) {
  // location + b ln 2 sits at the 75th percentile.
  const LaplaceParams p{1.0, 2.0};
  EXPECT_NEAR(laplace_cdf(1.0 + 2.0 * std::log(2.0), p), 0.75, 1e-15);
  EXPECT_NEAR(laplace_cdf(1.0 - 2.0 * std::log(2.0), p), 0.25, 1e-15);
}

TEST(LaplaceTest, CdfLimits) {
  const LaplaceParams p{0.0, 1.0};
  EXPECT_DOUBLE_EQ(laplace_cdf(-1e300, p), 0.0);
  EXPECT_DOUBLE_EQ(laplace_cdf(1e300, p), 1.0);
}

TEST(LaplaceTest, DegenerateScaleIsStep) {
  const LaplaceParams p{2.0, 0.0};
  EXPECT_DOUBLE_EQ(laplace_cdf(1.999, p), 0.0);
  EXPECT_DOUBLE_EQ(laplace_cdf(2.0, p), 1.0);
  EXPECT_DOUBLE_EQ(laplace_cdf(2.001, p), 1.0);
}

TEST(LaplaceTest, CdfMonotone) {
  const LaplaceParams p{0.3, 1.7};
  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = -10.0 + 0.1 * i;
    const double c = laplace_cdf(x, p);
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(LaplaceTest, QuantileCdfRoundTrip) {
  const LaplaceParams p{-1.5, 0.7};
  for (int i = 1; i < 1000; ++i) {
    const double prob = i / 1000.0;
    EXPECT_NEAR(laplace_cdf(laplace_quantile(prob, p), p), prob, 1e-12);
  }
}

TEST(LaplaceTest, QuantileMedianIsLocation) {
  EXPECT_DOUBLE_EQ(laplace_quantile(0.5, {0.0, 2.0}), 0.0);
  EXPECT_DOUBLE_EQ(laplace_quantile(0.5, {5.0, 2.0}), 5.0);
}

TEST(LaplaceTest, SampleDegenerateScale) {
  RngStream rng(1, 0);
  EXPECT_DOUBLE_EQ(laplace_sample({3.7, 0.0}, rng), 3.7);
}

TEST(LaplaceTest, SampleMomentsMatchClosedForm) {
  // Empirical mean within the 3-sigma band 5 b / sqrt(M); variance within 2%
  // of 2 b^2 over a million draws.
  const double b = 1.3;
  RngStream rng(42, 0);
  const int M = 1'000'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < M; ++i) {
    const double x = laplace_sample({0.0, b}, rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / M;
  const double var = sum_sq / M - mean * mean;
  EXPECT_NEAR(mean, 0.0, 5.0 * b / std::sqrt(static_cast<double>(M)));
  EXPECT_NEAR(var, 2.0 * b * b, 0.02 * 2.0 * b * b);
}

TEST(RngStreamTest, SameKeySameSequence) {
  RngStream a(123, 45), b(123, 45);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
  }
}

TEST(RngStreamTest, DifferentStreamsDiffer) {
  RngStream a(123, 1), b(123, 2);
  int equal = 0;
  for (int i = 0; i < 64; ++i) {
    equal += a.next_u64() == b.next_u64();
  }
  EXPECT_LE(equal, 1);
}

TEST(RngStreamTest, ForkIsDeterministicAndDistinct) {
  RngStream base(9, 9);
  RngStream f1 = base.fork(1);
  RngStream f1_again = RngStream(9, 9).fork(1);
  RngStream f2 = base.fork(2);
  EXPECT_EQ(f1.next_u64(), f1_again.next_u64());
  EXPECT_NE(f1.next_u64(), f2.next_u64());
}

TEST(RngStreamTest, UnitOpenInterval) {
  RngStream rng(7, 7);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_unit();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RngStreamTest, BelowInRangeAndUniform) {
  RngStream rng(11, 0);
  int counts[7] = {0};
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) {
    EXPECT_NEAR(c, 10000.0, 5.0 * std::sqrt(10000.0 * 6.0 / 7.0));
  }
}

}  // namespace
}  // namespace dpamp
