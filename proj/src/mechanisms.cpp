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

#include "dpamp/mechanisms.hpp"

#include <algorithm>

namespace dpamp {

PrivatizedEstimate privatize_global(double raw, const SensitivityReport& sens,
                                    const PrivacyBudget& budget, RngStream& rng) {
  if (budget.delta != 0.0) {
    throw std::invalid_argument(
        "privatize_global: pure-epsilon mechanism, delta must be 0");
  }
  if (sens.kind != SensitivityKind::kGlobal) {
    throw std::invalid_argument(
        "privatize_global: sensitivity report must be of global kind");
  }
  PrivatizedEstimate out;
  out.raw_value = raw;
  out.noise_scale = sens.value / budget.epsilon;
  out.noisy_value = raw + laplace_sample({0.0, out.noise_scale}, rng);
  out.budget = budget;
  out.sensitivity = sens;
  return out;
}

PrivatizedEstimate privatize_smooth_median(const Population& pop,
                                           const PrivacyBudget& budget,
                                           RngStream& rng, bool clamp_to_bounds) {
  const SensitivityReport sens = smooth_sensitivity_median(pop, budget);
  PrivatizedEstimate out;
  out.raw_value = median_of_sorted(pop.sorted_values());
  out.noise_scale = 2.0 * sens.value / budget.epsilon;
  out.noisy_value = out.raw_value + laplace_sample({0.0, out.noise_scale}, rng);
  if (clamp_to_bounds && pop.bounds()) {
    out.noisy_value =
        std::clamp(out.noisy_value, pop.bounds()->lower, pop.bounds()->upper);
  }
  out.budget = budget;
  out.sensitivity = sens;
  return out;
}

}  // namespace dpamp
