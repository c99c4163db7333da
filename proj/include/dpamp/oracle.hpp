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

#ifndef DPAMP_ORACLE_HPP_
#define DPAMP_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "dpamp/core.hpp"
#include "dpamp/sensitivity.hpp"

// Brute-force verifiers. Everything here recomputes a claim from first
// principles (exhaustive enumeration, closed-form CDF mixtures) so the
// closed-form implementations have an independent check.

namespace dpamp {

/// Exact CDF of the released value when a global-sensitivity Laplace
/// mechanism runs on an SRSWOR sample: the uniform mixture over all
/// (N choose n) subsets of laplace_cdf(omega; statistic(subset), scale).
/// Only the global mechanism has a data-independent scale, so only it admits
/// this closed form; the population must be bounded and (N choose n) <= 10^6.
/// sample_eps is the budget spent at the sample level.
double exact_release_cdf(const Population& pop, std::int64_t n, Statistic stat,
                         double sample_eps, double omega);

struct AmplificationCheckReport {
  double max_violation = 0.0;  // worst slack deficit over both directions
  std::int64_t comparisons = 0;
  double factor = 0.0;  // 1 + rate (e^eps - 1)
  double additive = 0.0;  // rate * delta
};

/// Checks, at every omega in the grid and in both directions, that the
/// mixture CDFs of two neighbouring populations obey
///
///   F_A(w) <= (1 + n/N (e^eps - 1)) F_B(w) + (n/N) delta
///
/// when the sample-level release is (eps, delta)-DP (Laplace on the mean with
/// global sensitivity R/n and budget eps). Populations must be bounded, equal
/// size, and differ in exactly one position.
AmplificationCheckReport verify_amplification(const Population& pop_a,
                                              const Population& pop_b,
                                              std::int64_t n, double sample_eps,
                                              double sample_delta,
                                              const std::vector<double>& omega_grid);

/// Max |statistic change| over replacing each single record with each of
/// grid_size equispaced values in the bounds. Guard: N * grid_size <= 10^7.
double brute_force_local_sensitivity(const Population& pop, Statistic stat,
                                     std::int64_t grid_size);

/// Exhaustive global sensitivity over all grid^N datasets and all one-record
/// replacements. Tiny N only: grid_size^(N+1) * N <= 10^8.
double brute_force_global_sensitivity(Statistic stat, const Bounds& bounds,
                                      std::int64_t N, std::int64_t grid_size);

}  // namespace dpamp

#endif  // DPAMP_ORACLE_HPP_
