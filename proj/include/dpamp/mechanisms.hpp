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

#ifndef DPAMP_MECHANISMS_HPP_
#define DPAMP_MECHANISMS_HPP_

#include <cstdint>
#include <optional>

#include "dpamp/core.hpp"
#include "dpamp/sensitivity.hpp"

namespace dpamp {

struct SampleMeta {
  std::int64_t n = 0;
  std::int64_t N = 0;
  bool amplified = false;
};

/// A released value together with everything needed to audit it: the exact
/// budget spent, the sensitivity the noise was calibrated against, and the
/// realized noise (noisy_value - raw_value).
struct PrivatizedEstimate {
  double raw_value = 0.0;
  double noisy_value = 0.0;
  double noise_scale = 0.0;
  PrivacyBudget budget;
  SensitivityReport sensitivity;
  std::optional<SampleMeta> sample_meta;

  double noise() const { return noisy_value - raw_value; }
};

/// Adds Laplace(0, sens / eps) noise to a statistic under its global
/// sensitivity. Pure-epsilon only: rejects budgets with delta != 0 and
/// reports with a kind other than global.
PrivatizedEstimate privatize_global(double raw, const SensitivityReport& sens,
                                    const PrivacyBudget& budget, RngStream& rng);

/// Releases the median with Laplace(0, 2 * smooth_sensitivity / eps) noise.
/// Requires odd N and delta > 0. When clamp_to_bounds is set (off by default,
/// and off in every shipped study) the noisy value is clipped into the
/// population bounds as post-processing.
PrivatizedEstimate privatize_smooth_median(const Population& pop,
                                           const PrivacyBudget& budget,
                                           RngStream& rng,
                                           bool clamp_to_bounds = false);

}  // namespace dpamp

#endif  // DPAMP_MECHANISMS_HPP_
