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

#ifndef DPAMP_SAMPLING_HPP_
#define DPAMP_SAMPLING_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "dpamp/common.hpp"
#include "dpamp/core.hpp"

namespace dpamp {

/// A without-replacement selection of n distinct units out of N, recorded as
/// ascending 1-based indices.
struct SampleSelection {
  std::vector<std::int64_t> indices;
  std::int64_t n = 0;
  std::int64_t N = 0;
};

/// Simple random sample without replacement, uniform over all (N choose n)
/// subsets, via a partial Fisher-Yates shuffle. Consumes exactly n draws for
/// every call, which keeps sibling streams aligned across experiment
/// variants. The returned sub-population inherits the bounds.
std::pair<SampleSelection, Population> srswor(const Population& pop,
                                              std::int64_t n, RngStream& rng);

/// (N choose n), throwing GuardExceeded beyond limit.
std::uint64_t binomial_coefficient(std::int64_t N, std::int64_t n,
                                   std::uint64_t limit = 1'000'000);

/// Visits every size-n subset of {1..N} exactly once, in lexicographic order.
/// Guarded: (N choose n) must not exceed 10^6.
template <class Visitor>
void enumerate_samples(std::int64_t N, std::int64_t n, Visitor&& visit) {
  if (N < 0 || n < 0 || n > N) {
    throw std::invalid_argument("enumerate_samples: need 0 <= n <= N");
  }
  binomial_coefficient(N, n);  // guard
  std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    visit(static_cast<const std::vector<std::int64_t>&>(idx));
    // Advance to the next combination.
    std::int64_t i = n - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == N - (n - 1 - i)) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < n; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace dpamp

#endif  // DPAMP_SAMPLING_HPP_
