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

#include "dpamp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpamp/sampling.hpp"

namespace dpamp {

namespace {

double subset_statistic(const std::vector<double>& values,
                        const std::vector<std::int64_t>& subset, Statistic stat,
                        std::vector<double>& scratch) {
  scratch.clear();
  for (std::int64_t one_based : subset) {
    scratch.push_back(values[static_cast<std::size_t>(one_based - 1)]);
  }
  if (stat == Statistic::kMean) return mean_of(scratch);
  std::sort(scratch.begin(), scratch.end());
  return median_of_sorted(scratch);
}

double global_scale(const Population& pop, std::int64_t n, Statistic stat,
                    double sample_eps) {
  if (!pop.bounds()) {
    throw std::invalid_argument("oracle: population must be bounded");
  }
  if (!(sample_eps > 0.0)) {
    throw std::invalid_argument("oracle: epsilon must be positive");
  }
  const double sens = stat == Statistic::kMean
                          ? pop.range() / static_cast<double>(n)
                          : pop.range();
  return sens / sample_eps;
}

}  // namespace

double exact_release_cdf(const Population& pop, std::int64_t n, Statistic stat,
                         double sample_eps, double omega) {
  const std::int64_t N = pop.size();
  if (n < 1 || n > N) {
    throw std::invalid_argument("exact_release_cdf: need 1 <= n <= N");
  }
  const double scale = global_scale(pop, n, stat, sample_eps);
  const double count = static_cast<double>(binomial_coefficient(N, n));
  double total = 0.0;
  std::vector<double> scratch;
  enumerate_samples(N, n, [&](const std::vector<std::int64_t>& subset) {
    const double g = subset_statistic(pop.values(), subset, stat, scratch);
    total += laplace_cdf(omega, {g, scale});
  });
  return total / count;
}

AmplificationCheckReport verify_amplification(const Population& pop_a,
                                              const Population& pop_b,
                                              std::int64_t n, double sample_eps,
                                              double sample_delta,
                                              const std::vector<double>& omega_grid) {
  const std::int64_t N = pop_a.size();
  if (pop_b.size() != N) {
    throw std::invalid_argument("verify_amplification: populations must have equal size");
  }
  std::int64_t differing = 0;
  for (std::int64_t i = 0; i < N; ++i) {
    if (pop_a.values()[static_cast<std::size_t>(i)] !=
        pop_b.values()[static_cast<std::size_t>(i)]) {
      ++differing;
    }
  }
  if (differing > 1) {
    throw std::invalid_argument(
        "verify_amplification: populations must differ in at most one record");
  }
  if (sample_delta < 0.0 || sample_delta >= 1.0) {
    throw std::invalid_argument("verify_amplification: delta must lie in [0, 1)");
  }

  const double rate = static_cast<double>(n) / static_cast<double>(N);
  AmplificationCheckReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  report.factor = 1.0 + rate * std::expm1(sample_eps);
  report.additive = rate * sample_delta;

  // Precompute the per-subset statistics once; each omega then costs one
  // Laplace CDF per subset and side. The mean release uses global
  // sensitivity R/n at the sample level.
  const double scale = global_scale(pop_a, n, Statistic::kMean, sample_eps);
  std::vector<double> stats_a, stats_b;
  std::vector<double> scratch;
  enumerate_samples(N, n, [&](const std::vector<std::int64_t>& subset) {
    stats_a.push_back(
        subset_statistic(pop_a.values(), subset, Statistic::kMean, scratch));
    stats_b.push_back(
        subset_statistic(pop_b.values(), subset, Statistic::kMean, scratch));
  });
  const double count = static_cast<double>(stats_a.size());

  for (double omega : omega_grid) {
    double fa = 0.0, fb = 0.0;
    for (std::size_t i = 0; i < stats_a.size(); ++i) {
      fa += laplace_cdf(omega, {stats_a[i], scale});
      fb += laplace_cdf(omega, {stats_b[i], scale});
    }
    fa /= count;
    fb /= count;
    report.max_violation =
        std::max({report.max_violation, fa - (report.factor * fb + report.additive),
                  fb - (report.factor * fa + report.additive)});
    report.comparisons += 2;
  }
  // Limits: F(-inf) = 0 and F(+inf) = 1 hold for every mixture, so the
  // endpoint checks reduce to 0 <= additive and 1 <= factor + additive.
  report.max_violation = std::max(report.max_violation, 0.0 - report.additive);
  report.max_violation =
      std::max(report.max_violation, 1.0 - (report.factor + report.additive));
  report.comparisons += 2;
  return report;
}

double brute_force_local_sensitivity(const Population& pop, Statistic stat,
                                     std::int64_t grid_size) {
  if (!pop.bounds()) {
    throw std::invalid_argument("brute_force_local_sensitivity: needs bounds");
  }
  if (grid_size < 2) {
    throw std::invalid_argument("brute_force_local_sensitivity: grid too small");
  }
  const std::int64_t N = pop.size();
  if (N * grid_size > 10'000'000) {
    throw GuardExceeded("brute_force_local_sensitivity: N * grid_size beyond 1e7");
  }
  const double lo = pop.bounds()->lower;
  const double step = pop.range() / static_cast<double>(grid_size - 1);

  std::vector<double> working = pop.values();
  const double base = stat == Statistic::kMean
                          ? mean_of(working)
                          : median_of_sorted(pop.sorted_values());
  double worst = 0.0;
  std::vector<double> scratch;
  for (std::int64_t i = 0; i < N; ++i) {
    const double original = working[static_cast<std::size_t>(i)];
    for (std::int64_t g = 0; g < grid_size; ++g) {
      working[static_cast<std::size_t>(i)] = lo + step * static_cast<double>(g);
      double changed;
      if (stat == Statistic::kMean) {
        changed = mean_of(working);
      } else {
        scratch = working;
        std::sort(scratch.begin(), scratch.end());
        changed = median_of_sorted(scratch);
      }
      worst = std::max(worst, std::abs(changed - base));
    }
    working[static_cast<std::size_t>(i)] = original;
  }
  return worst;
}

double brute_force_global_sensitivity(Statistic stat, const Bounds& bounds,
                                      std::int64_t N, std::int64_t grid_size) {
  if (N < 1 || grid_size < 2) {
    throw std::invalid_argument("brute_force_global_sensitivity: bad inputs");
  }
  double cost = static_cast<double>(N) * static_cast<double>(grid_size);
  for (std::int64_t i = 0; i < N; ++i) cost *= static_cast<double>(grid_size);
  if (cost > 1e8) {
    throw GuardExceeded("brute_force_global_sensitivity: grid^(N+1) * N beyond 1e8");
  }
  const double step = bounds.range() / static_cast<double>(grid_size - 1);
  std::vector<double> values(static_cast<std::size_t>(N), bounds.lower);
  std::vector<std::int64_t> digits(static_cast<std::size_t>(N), 0);
  std::vector<double> scratch;

  const auto statistic = [&](const std::vector<double>& v) {
    if (stat == Statistic::kMean) return mean_of(v);
    scratch = v;
    std::sort(scratch.begin(), scratch.end());
    return median_of_sorted(scratch);
  };

  double worst = 0.0;
  while (true) {
    const double base = statistic(values);
    for (std::int64_t i = 0; i < N; ++i) {
      const double original = values[static_cast<std::size_t>(i)];
      for (std::int64_t g = 0; g < grid_size; ++g) {
        values[static_cast<std::size_t>(i)] =
            bounds.lower + step * static_cast<double>(g);
        worst = std::max(worst, std::abs(statistic(values) - base));
      }
      values[static_cast<std::size_t>(i)] = original;
    }
    // Next dataset in the grid.
    std::int64_t pos = 0;
    while (pos < N) {
      auto& d = digits[static_cast<std::size_t>(pos)];
      if (++d < grid_size) {
        values[static_cast<std::size_t>(pos)] =
            bounds.lower + step * static_cast<double>(d);
        break;
      }
      d = 0;
      values[static_cast<std::size_t>(pos)] = bounds.lower;
      ++pos;
    }
    if (pos == N) break;
  }
  return worst;
}

}  // namespace dpamp
