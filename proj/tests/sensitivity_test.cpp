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

#include "dpamp/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

namespace dpamp {
namespace {

std::vector<double> random_values(RngStream& rng, int n, double lo = 0.0,
                                  double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = lo + (hi - lo) * rng.next_unit();
  return v;
}

TEST(GlobalSensitivityTest, MeanClosedForm) {
  EXPECT_DOUBLE_EQ(global_sensitivity_mean(1.0, 10001).value, 1.0 / 10001.0);
  EXPECT_DOUBLE_EQ(global_sensitivity_mean(1.0, 1).value, 1.0);
  EXPECT_DOUBLE_EQ(global_sensitivity_mean(2.5, 5).value, 0.5);
}

TEST(GlobalSensitivityTest, MedianIsRangeForAnyN) {
  EXPECT_DOUBLE_EQ(global_sensitivity_median(1.0).value, 1.0);
  EXPECT_DOUBLE_EQ(global_sensitivity_median(0.001).value, 0.001);
  // N-independence: the Population overload gives the same value at any size.
  for (int n : {3, 101, 10001}) {
    std::vector<double> v(n, 0.5);
    v.front() = 0.0;
    v.back() = 1.0;
    EXPECT_DOUBLE_EQ(global_sensitivity_median(Population(v, Bounds{0, 1})).value,
                     1.0);
  }
}

TEST(GlobalSensitivityTest, UnboundedPopulationRejected) {
  const Population unbounded({1.0, 2.0, 3.0});
  EXPECT_THROW(global_sensitivity_mean(unbounded), std::invalid_argument);
  EXPECT_THROW(global_sensitivity_median(unbounded), std::invalid_argument);
  EXPECT_THROW(global_sensitivity_mean(0.0, 5), std::invalid_argument);
}

TEST(LocalSensitivityTest, MeanHandChecked) {
  const Population pop({0.2, 0.5, 0.8}, Bounds{0, 1});
  EXPECT_NEAR(local_sensitivity_mean(pop).value, 0.8 / 3.0, 1e-15);
}

TEST(LocalSensitivityTest, MeanAllAtLowerBound) {
  const Population pop(std::vector<double>(5, 0.0), Bounds{0, 1});
  EXPECT_DOUBLE_EQ(local_sensitivity_mean(pop).value, 1.0 / 5.0);
}

TEST(LocalSensitivityTest, MeanFullSpanEqualsGlobal) {
  std::vector<double> v(10, 0.5);
  v[0] = 0.0;
  v[9] = 1.0;
  const Population pop(v, Bounds{0, 1});
  EXPECT_DOUBLE_EQ(local_sensitivity_mean(pop).value, 0.1);
}

TEST(LocalSensitivityTest, MeanRequiresBounds) {
  EXPECT_THROW(local_sensitivity_mean(Population({1.0, 2.0})),
               std::invalid_argument);
}

TEST(LocalSensitivityTest, MedianGaps) {
  EXPECT_DOUBLE_EQ(local_sensitivity_median(Population({1, 2, 4, 8, 16})).value,
                   4.0);
  EXPECT_DOUBLE_EQ(local_sensitivity_median(Population({3, 3, 3, 3, 3})).value,
                   0.0);
  // Equally spaced grid: both gaps equal the step.
  EXPECT_DOUBLE_EQ(local_sensitivity_median(Population({0, 0.25, 0.5, 0.75, 1})).value,
                   0.25);
}

TEST(LocalSensitivityTest, MedianRequiresOddAtLeast3) {
  EXPECT_THROW(local_sensitivity_median(Population({1, 2, 3, 4})),
               std::invalid_argument);
  EXPECT_THROW(local_sensitivity_median(Population({1.0})), std::invalid_argument);
}

TEST(SensitivityOrderingTest, LocalNeverExceedsGlobal) {
  RngStream rng(17, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + 2 * static_cast<int>(rng.below(20));
    const Population pop(random_values(rng, n), Bounds{0, 1});
    EXPECT_LE(local_sensitivity_mean(pop).value,
              global_sensitivity_mean(pop).value + 1e-15);
    EXPECT_LE(local_sensitivity_median(pop).value,
              global_sensitivity_median(pop).value + 1e-15);
  }
}

TEST(SensitivityTest, PermutationInvariance) {
  RngStream rng(23, 0);
  std::vector<double> v = random_values(rng, 9);
  std::vector<double> shuffled = v;
  std::reverse(shuffled.begin(), shuffled.end());
  std::swap(shuffled[2], shuffled[5]);
  const Population a(v, Bounds{0, 1}), b(shuffled, Bounds{0, 1});
  const PrivacyBudget budget(1.0, 0.25);
  EXPECT_DOUBLE_EQ(local_sensitivity_mean(a).value, local_sensitivity_mean(b).value);
  EXPECT_DOUBLE_EQ(local_sensitivity_median(a).value,
                   local_sensitivity_median(b).value);
  EXPECT_DOUBLE_EQ(smooth_sensitivity_median(a, budget).value,
                   smooth_sensitivity_median(b, budget).value);
}

// Exhaustive evaluation of the envelope, written independently of the
// implementation: no pruning, explicit index rules.
double smooth_reference(std::vector<double> values, std::optional<Bounds> bounds,
                        double beta) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<std::int64_t>(values.size());
  const std::int64_t mid = n / 2;
  double best = 0.0;
  for (std::int64_t k = 0; k <= n; ++k) {
    double widest = 0.0;
    for (std::int64_t t = 0; t <= k + 1; ++t) {
      const std::int64_t hi = mid + t;
      const std::int64_t lo = mid + t - k - 1;
      double hi_v, lo_v;
      if (bounds) {
        hi_v = hi >= n ? bounds->upper : values[hi];
        lo_v = lo < 0 ? bounds->lower : values[lo];
      } else {
        if (hi >= n || lo < 0) continue;
        hi_v = values[hi];
        lo_v = values[lo];
      }
      widest = std::max(widest, hi_v - lo_v);
    }
    best = std::max(best, std::exp(-beta * k) * widest);
  }
  return best;
}

TEST(SmoothSensitivityTest, FivePointExample) {
  const Population pop({0, 0.25, 0.5, 0.75, 1}, Bounds{0, 1});
  const PrivacyBudget budget(1.0, 0.25);
  const SensitivityReport rep = smooth_sensitivity_median(pop, budget);
  // beta = 1 / (2 ln 8); the winner is the full span at k = 3.
  const double beta = 1.0 / (2.0 * std::log(8.0));
  EXPECT_NEAR(rep.value, std::exp(-3.0 * beta), 1e-15);
  EXPECT_NEAR(rep.value, 0.4862, 2e-4);
  ASSERT_TRUE(rep.argmax_k.has_value());
  EXPECT_EQ(*rep.argmax_k, 3);
  ASSERT_TRUE(rep.params.has_value());
  EXPECT_NEAR(rep.params->beta, beta, 1e-15);
  EXPECT_NEAR(rep.value, smooth_reference({0, 0.25, 0.5, 0.75, 1}, Bounds{0, 1}, beta),
              1e-15);
}

TEST(SmoothSensitivityTest, ConstantDataBounded) {
  const std::vector<double> v(7, 0.3);
  const Population pop(v, Bounds{0.3, 1.3});
  const PrivacyBudget budget(1.0, 0.25);
  const double beta = 1.0 / (2.0 * std::log(8.0));
  const SensitivityReport rep = smooth_sensitivity_median(pop, budget);
  EXPECT_NEAR(rep.value, smooth_reference(v, Bounds{0.3, 1.3}, beta), 1e-15);
  // Interior spans are all zero; only boundary-clamped spans contribute.
  EXPECT_GT(rep.value, 0.0);
}

TEST(SmoothSensitivityTest, ConstantDataUnboundedIsZero) {
  const Population pop(std::vector<double>(9, 1.5));
  EXPECT_DOUBLE_EQ(smooth_sensitivity_median(pop, PrivacyBudget(1.0, 0.25)).value,
                   0.0);
}

TEST(SmoothSensitivityTest, HugeBetaCollapsesToMedianGapTerm) {
  const Population pop({1, 2, 4, 8, 16});
  // k = 0 reduces to the two spans adjacent to the median: max(8-4, 4-2).
  const double expected = 4.0;
  std::int64_t argmax = -1;
  const double v = smooth_median_envelope(pop.sorted_values(), std::nullopt, 1e9,
                                          SmoothOptions{}, &argmax);
  EXPECT_DOUBLE_EQ(v, expected);
  EXPECT_EQ(argmax, 0);
}

TEST(SmoothSensitivityTest, RejectsEvenSizeAndZeroDelta) {
  EXPECT_THROW(
      smooth_sensitivity_median(Population({1, 2, 3, 4}), PrivacyBudget(1.0, 0.1)),
      std::invalid_argument);
  EXPECT_THROW(
      smooth_sensitivity_median(Population({1, 2, 3}), PrivacyBudget(1.0, 0.0)),
      std::invalid_argument);
}

TEST(SmoothSensitivityTest, MonotoneNonincreasingInBeta) {
  RngStream rng(31, 0);
  const std::vector<double> v = random_values(rng, 21);
  const std::vector<double> sorted = [&] {
    auto s = v;
    std::sort(s.begin(), s.end());
    return s;
  }();
  double prev = 1e300;
  for (double beta : {0.01, 0.05, 0.1, 0.5, 1.0, 5.0}) {
    const double val = smooth_median_envelope(sorted, Bounds{0, 1}, beta);
    EXPECT_LE(val, prev + 1e-15);
    prev = val;
  }
}

TEST(SmoothSensitivityTest, DominatesMedianGapTerm) {
  RngStream rng(37, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5 + 2 * static_cast<int>(rng.below(10));
    auto sorted = random_values(rng, n);
    std::sort(sorted.begin(), sorted.end());
    const double beta = 0.05 + rng.next_unit();
    const double value = smooth_median_envelope(sorted, Bounds{0, 1}, beta);
    const std::size_t m = static_cast<std::size_t>(n) / 2;
    const double gap_term = std::max(sorted[m + 1] - sorted[m], sorted[m] - sorted[m - 1]);
    EXPECT_GE(value, gap_term - 1e-15);
  }
}

TEST(SmoothSensitivityTest, PrunedEqualsFullScan) {
  RngStream rng(41, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + 2 * static_cast<int>(rng.below(40));
    const bool bounded = rng.below(2) == 0;
    auto sorted = random_values(rng, n);
    std::sort(sorted.begin(), sorted.end());
    const std::optional<Bounds> bounds =
        bounded ? std::optional<Bounds>(Bounds{0, 1}) : std::nullopt;
    const double beta = 0.01 + 2.0 * rng.next_unit();
    const double pruned = smooth_median_envelope(sorted, bounds, beta, {true});
    const double full = smooth_median_envelope(sorted, bounds, beta, {false});
    EXPECT_NEAR(pruned, full, 1e-12);
    EXPECT_NEAR(pruned, smooth_reference(sorted, bounds, beta), 1e-12);
  }
}

}  // namespace
}  // namespace dpamp
