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

#ifndef DPAMP_CORE_HPP_
#define DPAMP_CORE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpamp/common.hpp"

namespace dpamp {

/// An (epsilon, delta) privacy budget. epsilon > 0, 0 <= delta < 1.
/// delta == 0 denotes the pure-epsilon guarantee.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;

  PrivacyBudget() = default;
  PrivacyBudget(double eps, double del);

  bool pure() const { return delta == 0.0; }
};

/// Location/scale parameters of a Laplace distribution. scale == 0 denotes a
/// point mass at the location.
struct LaplaceParams {
  double location = 0.0;
  double scale = 0.0;

  LaplaceParams() = default;
  LaplaceParams(double loc, double sc);
};

/// Deterministic counter-based random stream keyed on (master_seed,
/// stream_id). Equal keys reproduce the exact same sequence; distinct
/// stream_ids give statistically independent sequences, so replicates can be
/// dispatched to threads in any order without changing results.
///
/// The generator is SplitMix64 run in counter mode: draw i is
/// finalize(key + i * golden_gamma), with the key derived by hashing the seed
/// words together.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  /// Derives an independent child stream. Used to give each purpose inside a
  /// replicate (noise draw, sample selection, ...) its own stream.
  RngStream fork(std::uint64_t tag) const;

  std::uint64_t next_u64();

  /// Uniform double strictly inside (0, 1): the 2^53 grid midpoints, so
  /// downstream inverse-CDF transforms never see 0 or 1 exactly.
  double next_unit();

  /// Uniform integer in [0, bound). Consumes exactly one draw.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller. Consumes exactly two draws.
  double next_normal();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id,
            std::uint64_t key);

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
};

/// Optional hard support bounds of a dataset.
struct Bounds {
  double lower = 0.0;
  double upper = 0.0;

  double range() const { return upper - lower; }
};

/// An ordered real-valued dataset with optional hard range bounds. All values
/// must be finite; when bounds are present they must contain every value.
/// Immutable after construction and safe to share across threads.
class Population {
 public:
  Population(std::vector<double> values, std::optional<Bounds> bounds = {},
             std::string label = {});

  const std::vector<double>& values() const { return values_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  const std::optional<Bounds>& bounds() const { return bounds_; }
  const std::string& label() const { return label_; }

  /// upper - lower. Throws if the population carries no bounds.
  double range() const;

  /// Values in ascending order (computed once at construction).
  const std::vector<double>& sorted_values() const { return sorted_; }

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
  std::optional<Bounds> bounds_;
  std::string label_;
};

struct PopulationStats {
  double mean = 0.0;
  double median = 0.0;
  double variance = 0.0;  // N-1 denominator; 0 for N == 1
};

PopulationStats population_stats(const Population& pop);

double mean_of(const std::vector<double>& values);
/// Median of an ascending-sorted vector; even sizes get the midpoint of the
/// two central order statistics.
double median_of_sorted(const std::vector<double>& sorted);

/// Laplace CDF. scale == 0 degenerates to a step function (0 below the
/// location, 1 at or above it).
double laplace_cdf(double x, const LaplaceParams& params);

/// Inverse CDF; p must lie in (0, 1) unless scale == 0.
double laplace_quantile(double p, const LaplaceParams& params);

/// One Laplace draw by inverse-CDF sampling. Consumes exactly one uniform,
/// which keeps replay across runs and languages exact.
double laplace_sample(const LaplaceParams& params, RngStream& rng);

}  // namespace dpamp

#endif  // DPAMP_CORE_HPP_
