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

namespace dpamp {

const char* to_string(SensitivityKind kind) {
  switch (kind) {
    case SensitivityKind::kGlobal: return "global";
    case SensitivityKind::kLocal: return "local";
    case SensitivityKind::kSmooth: return "smooth";
  }
  return "?";
}

const char* to_string(Statistic stat) {
  switch (stat) {
    case Statistic::kMean: return "mean";
    case Statistic::kMedian: return "median";
  }
  return "?";
}

namespace {

double require_range(const Population& pop, const char* fn) {
  if (!pop.bounds()) {
    throw std::invalid_argument(std::string(fn) +
                                ": global sensitivity is infinite without hard bounds");
  }
  return pop.range();
}

}  // namespace

SensitivityReport global_sensitivity_mean(double range, std::int64_t n) {
  if (!(std::isfinite(range) && range > 0.0)) {
    throw std::invalid_argument("global_sensitivity_mean: range must be positive");
  }
  if (n < 1) {
    throw std::invalid_argument("global_sensitivity_mean: N must be >= 1");
  }
  SensitivityReport report;
  report.kind = SensitivityKind::kGlobal;
  report.statistic = Statistic::kMean;
  report.value = range / static_cast<double>(n);
  return report;
}

SensitivityReport global_sensitivity_mean(const Population& pop) {
  return global_sensitivity_mean(require_range(pop, "global_sensitivity_mean"),
                                 pop.size());
}

SensitivityReport global_sensitivity_median(double range) {
  if (!(std::isfinite(range) && range > 0.0)) {
    throw std::invalid_argument("global_sensitivity_median: range must be positive");
  }
  SensitivityReport report;
  report.kind = SensitivityKind::kGlobal;
  report.statistic = Statistic::kMedian;
  report.value = range;
  return report;
}

SensitivityReport global_sensitivity_median(const Population& pop) {
  return global_sensitivity_median(require_range(pop, "global_sensitivity_median"));
}

SensitivityReport local_sensitivity_mean(const Population& pop) {
  if (!pop.bounds()) {
    throw std::invalid_argument("local_sensitivity_mean: population has no bounds");
  }
  const auto& sorted = pop.sorted_values();
  const double worst = std::max(pop.bounds()->upper - sorted.front(),
                                sorted.back() - pop.bounds()->lower);
  SensitivityReport report;
  report.kind = SensitivityKind::kLocal;
  report.statistic = Statistic::kMean;
  report.value = worst / static_cast<double>(pop.size());
  return report;
}

SensitivityReport local_sensitivity_median(const Population& pop) {
  const std::int64_t n = pop.size();
  if (n % 2 == 0) {
    throw std::invalid_argument("local_sensitivity_median: N must be odd");
  }
  if (n < 3) {
    throw std::invalid_argument("local_sensitivity_median: N must be >= 3");
  }
  const auto& y = pop.sorted_values();
  const auto m = static_cast<std::size_t>(n / 2);  // 0-based median index
  SensitivityReport report;
  report.kind = SensitivityKind::kLocal;
  report.statistic = Statistic::kMedian;
  report.value = std::max(y[m + 1] - y[m], y[m] - y[m - 1]);
  return report;
}

double smooth_median_envelope(const std::vector<double>& sorted_values,
                              const std::optional<Bounds>& bounds, double beta,
                              const SmoothOptions& options,
                              std::int64_t* argmax_k) {
  const auto n = static_cast<std::int64_t>(sorted_values.size());
  if (n % 2 == 0 || n == 0) {
    throw std::invalid_argument("smooth_median_envelope: size must be odd");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("smooth_median_envelope: beta must be positive");
  }
  const double* y = sorted_values.data();
  const std::int64_t m = n / 2;

  // Largest span any (k, t) pair can reach; drives the pruning cutoff.
  const double span_cap =
      bounds ? bounds->range() : sorted_values.back() - sorted_values.front();

  double best = 0.0;
  std::int64_t best_k = 0;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double weight = std::exp(-beta * static_cast<double>(k));
    if (options.prune && weight * span_cap <= best) break;

    double widest = 0.0;
    if (bounds) {
      // Out-of-range order statistics clamp to the support bounds.
      const double lo_b = bounds->lower;
      const double hi_b = bounds->upper;
      for (std::int64_t t = 0; t <= k + 1; ++t) {
        const std::int64_t hi_i = m + t;
        const std::int64_t lo_i = m + t - k - 1;
        const double hi_v = hi_i >= n ? hi_b : y[hi_i];
        const double lo_v = lo_i < 0 ? lo_b : y[lo_i];
        widest = std::max(widest, hi_v - lo_v);
      }
    } else {
      // No bounds: pairs with out-of-range indices contribute nothing.
      const std::int64_t t_lo = std::max<std::int64_t>(0, k + 1 - m);
      const std::int64_t t_hi = std::min(k + 1, n - 1 - m);
      for (std::int64_t t = t_lo; t <= t_hi; ++t) {
        widest = std::max(widest, y[m + t] - y[m + t - k - 1]);
      }
    }

    const double candidate = weight * widest;
    if (candidate > best) {
      best = candidate;
      best_k = k;
    }
  }
  if (argmax_k != nullptr) *argmax_k = best_k;
  return best;
}

SensitivityReport smooth_sensitivity_median(const Population& pop,
                                            const PrivacyBudget& budget,
                                            const SmoothOptions& options) {
  if (pop.size() % 2 == 0) {
    throw std::invalid_argument("smooth_sensitivity_median: N must be odd");
  }
  if (budget.delta <= 0.0) {
    throw std::invalid_argument(
        "smooth_sensitivity_median: delta must be positive (beta undefined at delta = 0)");
  }
  const double beta = budget.epsilon / (2.0 * std::log(2.0 / budget.delta));
  std::int64_t argmax_k = 0;
  const double value = smooth_median_envelope(pop.sorted_values(), pop.bounds(),
                                              beta, options, &argmax_k);
  SensitivityReport report;
  report.kind = SensitivityKind::kSmooth;
  report.statistic = Statistic::kMedian;
  report.value = value;
  report.params = SmoothParams{budget.epsilon, budget.delta, beta};
  report.argmax_k = argmax_k;
  return report;
}

}  // namespace dpamp
