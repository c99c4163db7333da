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

#include <algorithm>
#include <cmath>

namespace dpamp {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

std::uint64_t derive_key(std::uint64_t master_seed, std::uint64_t stream_id) {
  return mix64(mix64(master_seed + kGamma) ^ mix64(stream_id + 2 * kGamma));
}

}  // namespace

PrivacyBudget::PrivacyBudget(double eps, double del) : epsilon(eps), delta(del) {
  if (!(std::isfinite(eps) && eps > 0.0)) {
    throw std::invalid_argument("PrivacyBudget: epsilon must be finite and positive");
  }
  if (!(std::isfinite(del) && del >= 0.0 && del < 1.0)) {
    throw std::invalid_argument("PrivacyBudget: delta must lie in [0, 1)");
  }
}

LaplaceParams::LaplaceParams(double loc, double sc) : location(loc), scale(sc) {
  if (!std::isfinite(loc)) {
    throw std::invalid_argument("LaplaceParams: location must be finite");
  }
  if (!(std::isfinite(sc) && sc >= 0.0)) {
    throw std::invalid_argument("LaplaceParams: scale must be nonnegative");
  }
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      state_(derive_key(master_seed, stream_id)) {}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id,
                     std::uint64_t key)
    : master_seed_(master_seed), stream_id_(stream_id), state_(key) {}

RngStream RngStream::fork(std::uint64_t tag) const {
  return RngStream(master_seed_, stream_id_,
                   mix64(state_ ^ mix64(tag + 3 * kGamma)));
}

std::uint64_t RngStream::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double RngStream::next_unit() {
  // 53-bit mantissa, shifted to bin midpoints: result is in (0, 1) strictly.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("RngStream::below: bound must be positive");
  }
  auto v = static_cast<std::uint64_t>(next_unit() * static_cast<double>(bound));
  return v < bound ? v : bound - 1;
}

double RngStream::next_normal() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Population::Population(std::vector<double> values, std::optional<Bounds> bounds,
                       std::string label)
    : values_(std::move(values)), bounds_(bounds), label_(std::move(label)) {
  if (values_.empty()) {
    throw std::invalid_argument("Population: needs at least one value");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Population: values must be finite");
    }
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
  if (bounds_) {
    if (!(std::isfinite(bounds_->lower) && std::isfinite(bounds_->upper) &&
          bounds_->lower < bounds_->upper)) {
      throw std::invalid_argument("Population: bounds must satisfy lower < upper");
    }
    if (sorted_.front() < bounds_->lower || sorted_.back() > bounds_->upper) {
      throw std::invalid_argument("Population: values must lie within the bounds");
    }
  }
}

double Population::range() const {
  if (!bounds_) {
    throw std::invalid_argument("Population::range: population has no bounds");
  }
  return bounds_->range();
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double median_of_sorted(const std::vector<double>& sorted) {
  const std::size_t n = sorted.size();
  if (n == 0) {
    throw std::invalid_argument("median_of_sorted: empty input");
  }
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

PopulationStats population_stats(const Population& pop) {
  PopulationStats out;
  out.mean = mean_of(pop.values());
  out.median = median_of_sorted(pop.sorted_values());
  const auto n = static_cast<double>(pop.size());
  if (pop.size() > 1) {
    double ss = 0.0;
    for (double v : pop.values()) {
      const double d = v - out.mean;
      ss += d * d;
    }
    out.variance = ss / (n - 1.0);
  }
  return out;
}

double laplace_cdf(double x, const LaplaceParams& params) {
  if (params.scale == 0.0) {
    return x < params.location ? 0.0 : 1.0;
  }
  const double z = (x - params.location) / params.scale;
  if (z < 0.0) return 0.5 * std::exp(z);
  return 1.0 - 0.5 * std::exp(-z);
}

double laplace_quantile(double p, const LaplaceParams& params) {
  if (params.scale == 0.0) return params.location;
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("laplace_quantile: p must lie in (0, 1)");
  }
  // log1p keeps the tails accurate for p near 0.5 as well as near 0 or 1.
  if (p < 0.5) {
    return params.location + params.scale * std::log1p(2.0 * p - 1.0);
  }
  return params.location - params.scale * std::log1p(1.0 - 2.0 * p);
}

double laplace_sample(const LaplaceParams& params, RngStream& rng) {
  if (params.scale == 0.0) return params.location;
  return laplace_quantile(rng.next_unit(), params);
}

}  // namespace dpamp
