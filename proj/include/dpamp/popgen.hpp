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

#ifndef DPAMP_POPGEN_HPP_
#define DPAMP_POPGEN_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "dpamp/core.hpp"

namespace dpamp {

/// N i.i.d. Beta(a, b) draws, bounds (0, 1).
Population gen_beta(std::int64_t n, double a, double b, RngStream rng);

/// N i.i.d. exp(Normal(mu, sigma)) draws. Unbounded support, so no bounds.
Population gen_lognormal(std::int64_t n, double mu, double sigma, RngStream rng);

/// Two well-separated modes: (N+1)/2 draws of Beta(2,10)/2 followed by
/// (N-1)/2 draws of Beta(2,10)+1, min-max rescaled onto [0, 1]. The median is
/// the largest first-component value, sitting just below a density gap.
/// Requires odd N >= 3. Bounds (0, 1).
Population gen_bimodal_beta_mix(std::int64_t n, RngStream rng);

/// One Gamma(shape, 1) draw (Marsaglia-Tsang squeeze). Draw count varies per
/// call; callers must own the stream.
double gamma_draw(double shape, RngStream& rng);

double beta_draw(double a, double b, RngStream& rng);

/// Reads a single-column CSV (comment lines start with '#', an optional
/// non-numeric header row is skipped).
Population load_population(const std::filesystem::path& csv_path,
                           std::optional<Bounds> bounds = {},
                           std::string label = {});

/// Writes one value per line with '#' comment lines carrying provenance.
void save_population(const Population& pop, const std::filesystem::path& csv_path,
                     const std::string& provenance);

}  // namespace dpamp

#endif  // DPAMP_POPGEN_HPP_
