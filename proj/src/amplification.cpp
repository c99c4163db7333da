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

#include "dpamp/amplification.hpp"

#include <cmath>
#include <limits>

namespace dpamp {

namespace {

void check_rate(double rate, const char* fn, bool allow_one = true) {
  const bool ok = rate > 0.0 && (allow_one ? rate <= 1.0 : rate < 1.0);
  if (!ok) {
    throw std::invalid_argument(std::string(fn) + ": rate must lie in (0, 1" +
                                (allow_one ? "]" : ")"));
  }
}

double amplified_eps(double eps, double rate) {
  return std::log1p(std::expm1(eps) / rate);
}

}  // namespace

PrivacyBudget effective_budget(const PrivacyBudget& sample_budget, double rate) {
  check_rate(rate, "effective_budget");
  if (rate == 1.0) return sample_budget;
  return PrivacyBudget(std::log1p(rate * std::expm1(sample_budget.epsilon)),
                       rate * sample_budget.delta);
}

PrivacyBudget amplified_budget(const PrivacyBudget& target, double rate) {
  check_rate(rate, "amplified_budget");
  if (rate == 1.0) return target;
  const double delta_n = target.delta / rate;
  if (delta_n >= 1.0) {
    throw std::invalid_argument(
        "amplified_budget: amplified delta not a valid probability");
  }
  return PrivacyBudget(amplified_eps(target.epsilon, rate), delta_n);
}

double q_bound(double target_eps, double rate) {
  check_rate(rate, "q_bound");
  if (!(target_eps > 0.0)) {
    throw std::invalid_argument("q_bound: epsilon must be positive");
  }
  if (rate == 1.0) return 0.0;
  const double ratio = target_eps / amplified_eps(target_eps, rate);
  return 1.0 - ratio * ratio;
}

double q_bound_small_eps(double rate) {
  check_rate(rate, "q_bound_small_eps");
  return 1.0 - rate * rate;
}

double no_gain_threshold(double global_sens, double target_eps, double rate) {
  check_rate(rate, "no_gain_threshold");
  if (!(global_sens > 0.0) || !(target_eps > 0.0)) {
    throw std::invalid_argument("no_gain_threshold: inputs must be positive");
  }
  if (rate == 1.0) return 0.0;
  const double eps_n = amplified_eps(target_eps, rate);
  return 2.0 * global_sens * global_sens *
         (1.0 / (target_eps * target_eps) - 1.0 / (eps_n * eps_n));
}

double mean_variance_population(double range, std::int64_t N, double eps) {
  if (!(range > 0.0) || N < 1 || !(eps > 0.0)) {
    throw std::invalid_argument("mean_variance_population: inputs must be positive");
  }
  const double b = range / (eps * static_cast<double>(N));
  return 2.0 * b * b;
}

MeanVariance mean_variance_sample(double range, std::int64_t N, std::int64_t n,
                                  double s2, double target_eps) {
  if (!(range > 0.0) || !(target_eps > 0.0) || s2 < 0.0) {
    throw std::invalid_argument("mean_variance_sample: invalid inputs");
  }
  if (n < 1 || n > N) {
    throw std::invalid_argument("mean_variance_sample: need 1 <= n <= N");
  }
  const double rate = static_cast<double>(n) / static_cast<double>(N);
  const double eps_n = rate == 1.0 ? target_eps : amplified_eps(target_eps, rate);
  MeanVariance out;
  out.sampling = (1.0 - rate) * s2 / static_cast<double>(n);
  const double b = range / (eps_n * static_cast<double>(n));
  out.noise = 2.0 * b * b;
  out.total = out.sampling + out.noise;
  return out;
}

double noise_ratio_mean(double target_eps, double rate) {
  check_rate(rate, "noise_ratio_mean");
  if (!(target_eps > 0.0)) {
    throw std::invalid_argument("noise_ratio_mean: epsilon must be positive");
  }
  if (rate == 1.0) return 1.0;
  const double root = rate * amplified_eps(target_eps, rate) / target_eps;
  return root * root;
}

CriticalEps critical_eps_for_unit_ratio(double rate) {
  check_rate(rate, "critical_eps_for_unit_ratio", /*allow_one=*/false);

  // Gap between the two sides of the amplification identity at the unit-ratio
  // pair (eps, eps / rate), evaluated in the exponential domain where it is
  // positive for every eps > 0 and flushes to zero below double resolution.
  const auto gap = [rate](double eps) {
    const double lhs = 1.0 + rate * std::expm1(eps / rate);
    const double rhs = std::exp(eps);
    const double d = lhs - rhs;
    return std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
  };

  double lo = std::log(1e-30);
  double hi = std::log(1e3);
  if (!(gap(std::exp(lo)) <= 0.0) || !(gap(std::exp(hi)) > 0.0)) {
    throw std::runtime_error(
        "critical_eps_for_unit_ratio: no sign change in bracket");
  }
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (gap(std::exp(mid)) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  CriticalEps out;
  out.eps = std::exp(lo);
  out.eps_n = out.eps / rate;
  return out;
}

OptimalRate optimal_rate_mean(double range, std::int64_t N, double s2,
                              double target_eps,
                              const std::vector<double>& rate_grid) {
  if (rate_grid.empty()) {
    throw std::invalid_argument("optimal_rate_mean: rate grid must be nonempty");
  }
  OptimalRate out;
  double best = std::numeric_limits<double>::infinity();
  const auto add_point = [&](double rate) {
    auto n = static_cast<std::int64_t>(std::llround(rate * static_cast<double>(N)));
    n = std::max<std::int64_t>(1, std::min(n, N));
    RateCurvePoint pt;
    pt.rate = rate;
    pt.n = n;
    pt.variance = mean_variance_sample(range, N, n, s2, target_eps);
    if (pt.variance.total < best) {
      best = pt.variance.total;
      out.best_rate = rate;
    }
    out.curve.push_back(pt);
  };
  bool has_unit_rate = false;
  for (double rate : rate_grid) {
    check_rate(rate, "optimal_rate_mean");
    if (rate == 1.0) has_unit_rate = true;
    add_point(rate);
  }
  if (!has_unit_rate) add_point(1.0);
  return out;
}

}  // namespace dpamp
