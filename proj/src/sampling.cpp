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

#include "dpamp/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace dpamp {

std::uint64_t binomial_coefficient(std::int64_t N, std::int64_t n,
                                   std::uint64_t limit) {
  if (N < 0 || n < 0 || n > N) {
    throw std::invalid_argument("binomial_coefficient: need 0 <= n <= N");
  }
  n = std::min(n, N - n);
  // Multiply/divide in long double first; only exact-check near the limit.
  long double approx = 1.0L;
  for (std::int64_t i = 1; i <= n; ++i) {
    approx *= static_cast<long double>(N - n + i);
    approx /= static_cast<long double>(i);
    if (approx > 2.0L * static_cast<long double>(limit)) {
      throw GuardExceeded("binomial_coefficient: (N choose n) exceeds guard of " +
                          std::to_string(limit));
    }
  }
  const auto value = static_cast<std::uint64_t>(approx + 0.5L);
  if (value > limit) {
    throw GuardExceeded("binomial_coefficient: (N choose n) exceeds guard of " +
                        std::to_string(limit));
  }
  return value;
}

std::pair<SampleSelection, Population> srswor(const Population& pop,
                                              std::int64_t n, RngStream& rng) {
  const std::int64_t N = pop.size();
  if (n < 1 || n > N) {
    throw std::invalid_argument("srswor: need 1 <= n <= N");
  }
  std::vector<std::int64_t> idx(static_cast<std::size_t>(N));
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  for (std::int64_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::int64_t>(
                           rng.below(static_cast<std::uint64_t>(N - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(n));
  std::sort(idx.begin(), idx.end());

  SampleSelection sel;
  sel.n = n;
  sel.N = N;
  sel.indices.reserve(static_cast<std::size_t>(n));
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i : idx) {
    sel.indices.push_back(i + 1);
    values.push_back(pop.values()[static_cast<std::size_t>(i)]);
  }
  return {std::move(sel),
          Population(std::move(values), pop.bounds(), pop.label())};
}

}  // namespace dpamp
