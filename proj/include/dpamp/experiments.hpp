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

#ifndef DPAMP_EXPERIMENTS_HPP_
#define DPAMP_EXPERIMENTS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpamp/core.hpp"
#include "dpamp/sensitivity.hpp"

namespace dpamp {

enum class Mechanism { kGlobalLaplace, kSmoothLaplace };

const char* to_string(Mechanism mech);

/// Where the study population comes from: one of the built-in generators or
/// a CSV file.
struct PopulationSource {
  enum class Kind { kBeta, kLognormal, kBimodalBetaMix, kCsv };

  Kind kind = Kind::kBeta;
  std::int64_t size = 0;  // generators only
  double a = 2.0, b = 10.0;       // beta
  double mu = 5.0, sigma = 0.5;   // lognormal
  std::uint64_t seed = 0;         // generators only
  std::string csv_path;           // csv only
  std::optional<Bounds> bounds;   // csv only

  Population realize() const;
};

/// Declarative description of a replication study.
///
/// Per replicate t (streams keyed on (master_seed, t)):
///   1. privatize the population statistic at the target budget;
///   2. draw an SRSWOR sample of each requested size and compute the raw
///      estimate;
///   3. privatize each estimate at the amplified budget for its rate.
/// A requested size of n == N is served by the population record itself, so
/// the rate-1 column reproduces the population pipeline exactly.
struct ExperimentSpec {
  PopulationSource source;
  Statistic statistic = Statistic::kMedian;
  Mechanism mechanism = Mechanism::kSmoothLaplace;
  PrivacyBudget target;
  std::vector<double> epsilons;          // grid for mse_curve; empty = {target.epsilon}
  std::vector<std::int64_t> sample_sizes;
  std::vector<double> rates;             // grid for mse_curve
  std::int64_t replicates = 0;
  std::uint64_t master_seed = 0;

  /// Throws std::invalid_argument on any inconsistency (sizes out of range,
  /// even sizes for the smooth median, delta constraints, ...).
  void validate(std::int64_t population_size) const;

  static ExperimentSpec parse_json(const std::string& text);
  static ExperimentSpec load_json_file(const std::filesystem::path& path);
  std::string to_json() const;
};

struct ReplicateRecord {
  std::int64_t replicate = 0;  // 1-based
  std::int64_t n = 0;
  double raw = 0.0;
  double sensitivity = 0.0;
  double noise_scale = 0.0;
  double noise = 0.0;
  double noisy = 0.0;
  double eps_n = 0.0;
  double delta_n = 0.0;
};

struct GroupAggregate {
  std::int64_t n = 0;
  double rate = 1.0;
  double eps_n = 0.0;
  double delta_n = 0.0;
  double mse_vs_true = 0.0;        // against the true population statistic
  double noise_variance = 0.0;     // empirical variance of realized noise
  double expected_noise_variance = 0.0;  // mean over replicates of 2 scale^2
  double raw_variance = 0.0;       // empirical variance of the raw estimates
  double sens_ratio_q25 = 1.0;     // sample sensitivity / population sensitivity
  double sens_ratio_median = 1.0;
  double sens_ratio_q75 = 1.0;
};

struct ExperimentResult {
  std::int64_t population_size = 0;
  double true_value = 0.0;
  double population_sensitivity = 0.0;  // at the target budget
  PrivacyBudget target;
  Statistic statistic = Statistic::kMedian;
  Mechanism mechanism = Mechanism::kSmoothLaplace;
  std::string population_label;
  std::vector<std::int64_t> group_sizes;     // population group (n = N) first
  std::vector<std::vector<ReplicateRecord>> records;  // [group][replicate]
  std::vector<GroupAggregate> aggregates;
};

/// Runs the three-step protocol, replicates dispatched over OpenMP threads.
/// Results are bit-identical for any thread count: each replicate owns
/// disjoint derived streams and writes to its own slot. threads <= 0 picks
/// the OpenMP default.
ExperimentResult run_protocol(const ExperimentSpec& spec, int threads = 0);

/// Plain-loop reference of run_protocol, kept for validating the parallel
/// runner. Identical output by construction.
ExperimentResult run_protocol_serial(const ExperimentSpec& spec);

struct MseCurvePoint {
  double epsilon = 0.0;
  double rate = 1.0;
  std::int64_t n = 0;
  double mse = 0.0;
  double log_mse = 0.0;
};

/// Empirical MSE against the true population statistic over the (epsilon,
/// rate) grid, plus a rate-1 row per epsilon holding the privatized-
/// population MSE. Rates map to the nearest odd n so the smooth median is
/// always defined. Every (epsilon, rate, replicate) cell draws from its own
/// stream.
std::vector<MseCurvePoint> mse_curve(const ExperimentSpec& spec, int threads = 0);

struct NoiseQuantiles {
  std::int64_t n = 0;
  double abs_q50 = 0.0;
  double abs_q90 = 0.0;
  double abs_q99 = 0.0;
  double abs_max = 0.0;
  double variance = 0.0;
};

/// Runs the protocol and aggregates only the realized noise per group.
std::vector<NoiseQuantiles> noise_distribution_study(const ExperimentSpec& spec,
                                                     int threads = 0);

struct VarianceDecomposition {
  double expected_noise_variance = 0.0;  // mean over replicates of 2 scale^2
  double sampling_variance = 0.0;        // variance of the raw estimates
};

/// Law-of-total-variance split for one group of an ExperimentResult.
VarianceDecomposition variance_decomposition(const ExperimentResult& result,
                                             std::int64_t n);

/// Aggregates recomputed from the per-replicate records; run_protocol uses
/// this same function, so persisted records always reproduce the aggregates.
std::vector<GroupAggregate> aggregate_records(
    const std::vector<std::int64_t>& group_sizes,
    const std::vector<std::vector<ReplicateRecord>>& records,
    std::int64_t population_size, double true_value,
    double population_sensitivity);

/// Linear-interpolation quantile of an ascending-sorted vector, p in [0, 1].
double quantile_of_sorted(const std::vector<double>& sorted, double p);

void write_replicates_csv(const ExperimentResult& result,
                          const std::filesystem::path& path);
void write_aggregates_csv(const ExperimentResult& result,
                          const std::filesystem::path& path);
void write_mse_curve_csv(const std::vector<MseCurvePoint>& curve,
                         const ExperimentSpec& spec,
                         const std::filesystem::path& path);

}  // namespace dpamp

#endif  // DPAMP_EXPERIMENTS_HPP_
