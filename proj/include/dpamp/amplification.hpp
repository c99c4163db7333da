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

#ifndef DPAMP_AMPLIFICATION_HPP_
#define DPAMP_AMPLIFICATION_HPP_

#include <cstdint>
#include <vector>

#include "dpamp/core.hpp"

namespace dpamp {

// Subsampling amplification for simple random sampling without replacement,
// in both directions:
//
//   effective:  eps_eff = ln(1 + rate * (e^eps - 1)),   delta_eff = rate * delta
//   amplified:  eps_n   = ln(1 + (e^eps - 1) / rate),   delta_n   = delta / rate
//
// All formulas are written with expm1/log1p so they stay exact for epsilon
// down to 1e-30, where the naive forms lose every significant digit.

enum class AmplifyDirection { kEffectiveFromSample, kSampleFromTarget };

struct AmplificationResult {
  PrivacyBudget target;
  PrivacyBudget sample_budget;
  double rate = 1.0;
  AmplifyDirection direction = AmplifyDirection::kEffectiveFromSample;
};

/// Population-level guarantee obtained when a mechanism with sample_budget
/// runs on a rate-fraction SRSWOR sample. rate in (0, 1]; rate == 1 is the
/// identity.
PrivacyBudget effective_budget(const PrivacyBudget& sample_budget, double rate);

/// Budget one may spend on the sample so that the population-level guarantee
/// still meets the target. Exact inverse of effective_budget. Rejects
/// delta / rate >= 1.
PrivacyBudget amplified_budget(const PrivacyBudget& target, double rate);

/// Largest admissible fraction q = 1 - (eps / eps_n)^2 of the
/// population-release noise variance that sampling variance may occupy before
/// gains become impossible.
double q_bound(double target_eps, double rate);

/// Small-epsilon limit of q_bound: 1 - rate^2.
double q_bound_small_eps(double rate);

/// Sampling-variance threshold 2 * sens^2 * (eps^-2 - eps_n^-2) above which a
/// subsampled release can never beat the full-data release.
double no_gain_threshold(double global_sens, double target_eps, double rate);

/// Noise variance of the full-data released mean: 2 * (R / (eps N))^2.
double mean_variance_population(double range, std::int64_t N, double eps);

struct MeanVariance {
  double total = 0.0;
  double sampling = 0.0;  // (1 - n/N) S^2 / n
  double noise = 0.0;     // 2 (R / (eps_n n))^2
};

/// Variance decomposition of the subsampled released mean at the amplified
/// budget.
MeanVariance mean_variance_sample(double range, std::int64_t N, std::int64_t n,
                                  double s2, double target_eps);

/// Ratio of population noise variance to sample noise variance for the mean:
/// r = (rate * eps_n / eps)^2. Always <= 1; equality only at rate 1 or in the
/// eps -> 0 limit, so the subsampled mean can never add less noise.
double noise_ratio_mean(double target_eps, double rate);

struct CriticalEps {
  double eps = 0.0;    // population-side budget on the r = 1 locus
  double eps_n = 0.0;  // = eps / rate
};

/// The r(eps, rate) = 1 locus has no positive solution in exact arithmetic
/// (r < 1 strictly for rate < 1), so this returns the largest eps whose pair
/// (eps, eps / rate) still satisfies the amplification identity
/// 1 + rate*(e^(eps/rate) - 1) = e^eps at double precision: bisection on
/// ln(eps) over [ln 1e-30, ln 1e3] against that consistency gap. Below the
/// returned eps the two sides are indistinguishable and r evaluates to 1.
CriticalEps critical_eps_for_unit_ratio(double rate);

struct RateCurvePoint {
  double rate = 0.0;
  std::int64_t n = 0;
  MeanVariance variance;
};

struct OptimalRate {
  double best_rate = 1.0;
  std::vector<RateCurvePoint> curve;  // includes a rate-1 row
};

/// Evaluates mean_variance_sample over a grid of rates (plus rate 1) and
/// returns the variance-minimizing rate. Rates map to n = round(rate * N),
/// clamped to [1, N].
OptimalRate optimal_rate_mean(double range, std::int64_t N, double s2,
                              double target_eps,
                              const std::vector<double>& rate_grid);

}  // namespace dpamp

#endif  // DPAMP_AMPLIFICATION_HPP_
