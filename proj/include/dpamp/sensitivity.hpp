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

#ifndef DPAMP_SENSITIVITY_HPP_
#define DPAMP_SENSITIVITY_HPP_

#include <cstdint>
#include <optional>

#include "dpamp/core.hpp"

namespace dpamp {

enum class SensitivityKind { kGlobal, kLocal, kSmooth };
enum class Statistic { kMean, kMedian };

const char* to_string(SensitivityKind kind);
const char* to_string(Statistic stat);

/// Parameters a smooth sensitivity was computed under.
/// beta = epsilon / (2 ln(2 / delta)).
struct SmoothParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double beta = 0.0;
};

/// A computed sensitivity value tagged with its kind and provenance.
struct SensitivityReport {
  SensitivityKind kind = SensitivityKind::kGlobal;
  Statistic statistic = Statistic::kMean;
  double value = 0.0;
  std::optional<SmoothParams> params;   // kSmooth only
  std::optional<std::int64_t> argmax_k; // kSmooth diagnostics
};

/// Worst-case change of the mean over one-record replacements within a known
/// range: R / N. Data without a hard range has infinite global sensitivity;
/// the Population overload rejects unbounded inputs.
SensitivityReport global_sensitivity_mean(double range, std::int64_t n);
SensitivityReport global_sensitivity_mean(const Population& pop);

/// Worst-case change of the median: the full range R, independent of N.
SensitivityReport global_sensitivity_median(double range);
SensitivityReport global_sensitivity_median(const Population& pop);

/// max(upper - min(values), max(values) - lower) / N. Requires bounds.
SensitivityReport local_sensitivity_mean(const Population& pop);

/// max of the two gaps between the median and its neighbouring order
/// statistics. Requires odd N >= 3.
SensitivityReport local_sensitivity_median(const Population& pop);

struct SmoothOptions {
  /// Stop the envelope scan once the decaying weight can no longer beat the
  /// best value found. Exact; the switch exists so tests can force the full
  /// quadratic evaluation.
  bool prune = true;
};

/// Smoothed upper envelope of the median's local sensitivity:
///
///   max over k of e^(-k beta) * max over t of (y_(m+t) - y_(m+t-k-1)),
///
/// with m the median rank, t in [0, k+1], and beta = eps / (2 ln(2 / delta)).
/// Order-statistic indices that fall outside [1, N] resolve to the population
/// bounds when bounds exist; without bounds those (k, t) pairs are skipped.
/// Requires odd N and delta > 0.
SensitivityReport smooth_sensitivity_median(const Population& pop,
                                            const PrivacyBudget& budget,
                                            const SmoothOptions& options = {});

/// Envelope evaluation at an explicit beta, for limit studies and tests.
/// sorted_values must be ascending with odd size.
double smooth_median_envelope(const std::vector<double>& sorted_values,
                              const std::optional<Bounds>& bounds, double beta,
                              const SmoothOptions& options = {},
                              std::int64_t* argmax_k = nullptr);

}  // namespace dpamp

#endif  // DPAMP_SENSITIVITY_HPP_
