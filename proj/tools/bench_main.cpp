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

// Timing comparison of the two kernel pairs the library keeps around:
// pruned vs full smooth-sensitivity envelope, and the parallel protocol
// runner vs its serial reference. Also asserts that each pair agrees.

#include <cstdio>
#include <cstdlib>
#include <cmath>

#include <omp.h>

#include "dpamp/core.hpp"
#include "dpamp/experiments.hpp"
#include "dpamp/popgen.hpp"
#include "dpamp/sensitivity.hpp"

using namespace dpamp;

namespace {

ExperimentSpec protocol_spec(std::int64_t replicates) {
  ExperimentSpec spec;
  spec.source.kind = PopulationSource::Kind::kLognormal;
  spec.source.size = 10001;
  spec.source.mu = 5.0;
  spec.source.sigma = 0.5;
  spec.source.seed = 7;
  spec.statistic = Statistic::kMedian;
  spec.mechanism = Mechanism::kSmoothLaplace;
  spec.target = PrivacyBudget(0.1, 4.9995e-5);
  spec.sample_sizes = {1001, 101};
  spec.replicates = replicates;
  spec.master_seed = 7;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t replicates = argc > 1 ? std::atoll(argv[1]) : 200;
  if (replicates < 1) replicates = 200;

  // Smooth-sensitivity envelope: pruned vs full scan.
  const Population pop = gen_lognormal(10001, 5.0, 0.5, RngStream(7, 0));
  const PrivacyBudget budget(0.1, 4.9995e-5);
  double t0 = omp_get_wtime();
  const SensitivityReport pruned = smooth_sensitivity_median(pop, budget);
  const double t_pruned = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const SensitivityReport full =
      smooth_sensitivity_median(pop, budget, SmoothOptions{false});
  const double t_full = omp_get_wtime() - t0;
  std::printf("smooth envelope N=%lld   pruned %.4fs   full %.4fs   speedup %.1fx\n",
              static_cast<long long>(pop.size()), t_pruned, t_full,
              t_full / t_pruned);
  if (std::abs(pruned.value - full.value) > 1e-12 * full.value) {
    std::fprintf(stderr, "MISMATCH: pruned %.17g vs full %.17g\n", pruned.value,
                 full.value);
    return 1;
  }

  // Protocol runner: serial reference vs OpenMP.
  const ExperimentSpec spec = protocol_spec(replicates);
  t0 = omp_get_wtime();
  const ExperimentResult serial = run_protocol_serial(spec);
  const double t_serial = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const ExperimentResult parallel = run_protocol(spec);
  const double t_parallel = omp_get_wtime() - t0;
  std::printf("protocol T=%lld (threads=%d)   serial %.3fs   parallel %.3fs   speedup %.2fx\n",
              static_cast<long long>(replicates), omp_get_max_threads(),
              t_serial, t_parallel, t_serial / t_parallel);

  for (std::size_t g = 0; g < serial.records.size(); ++g) {
    for (std::size_t t = 0; t < serial.records[g].size(); ++t) {
      if (serial.records[g][t].noisy != parallel.records[g][t].noisy) {
        std::fprintf(stderr, "MISMATCH at group %zu replicate %zu\n", g, t);
        return 1;
      }
    }
  }
  std::printf("kernel pairs agree\n");
  return 0;
}
