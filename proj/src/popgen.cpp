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

#include "dpamp/popgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dpamp {

double gamma_draw(double shape, RngStream& rng) {
  if (!(shape > 0.0)) {
    throw std::invalid_argument("gamma_draw: shape must be positive");
  }
  if (shape < 1.0) {
    // Boost to shape+1 and scale back down.
    const double u = rng.next_unit();
    return gamma_draw(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = rng.next_normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.next_unit();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta_draw(double a, double b, RngStream& rng) {
  const double g1 = gamma_draw(a, rng);
  const double g2 = gamma_draw(b, rng);
  return g1 / (g1 + g2);
}

Population gen_beta(std::int64_t n, double a, double b, RngStream rng) {
  if (n < 1) throw std::invalid_argument("gen_beta: N must be >= 1");
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("gen_beta: shape parameters must be positive");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) values.push_back(beta_draw(a, b, rng));
  std::ostringstream label;
  label << "beta(" << a << "," << b << ") N=" << n
        << " seed=" << rng.master_seed() << "/" << rng.stream_id();
  return Population(std::move(values), Bounds{0.0, 1.0}, label.str());
}

Population gen_lognormal(std::int64_t n, double mu, double sigma, RngStream rng) {
  if (n < 1) throw std::invalid_argument("gen_lognormal: N must be >= 1");
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gen_lognormal: sigma must be positive");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    values.push_back(std::exp(mu + sigma * rng.next_normal()));
  }
  std::ostringstream label;
  label << "lognormal(" << mu << "," << sigma << ") N=" << n
        << " seed=" << rng.master_seed() << "/" << rng.stream_id();
  return Population(std::move(values), std::nullopt, label.str());
}

Population gen_bimodal_beta_mix(std::int64_t n, RngStream rng) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("gen_bimodal_beta_mix: N must be odd and >= 3");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  const std::int64_t first = (n + 1) / 2;
  for (std::int64_t i = 0; i < first; ++i) {
    values.push_back(beta_draw(2.0, 10.0, rng) / 2.0);
  }
  for (std::int64_t i = first; i < n; ++i) {
    values.push_back(beta_draw(2.0, 10.0, rng) + 1.0);
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  for (double& v : values) v = (v - lo) / (hi - lo);
  std::ostringstream label;
  label << "bimodal-beta-mix N=" << n << " seed=" << rng.master_seed() << "/"
        << rng.stream_id();
  return Population(std::move(values), Bounds{0.0, 1.0}, label.str());
}

Population load_population(const std::filesystem::path& csv_path,
                           std::optional<Bounds> bounds, std::string label) {
  std::ifstream in(csv_path);
  if (!in) {
    throw IoError("load_population: cannot open " + csv_path.string());
  }
  std::vector<double> values;
  std::string line;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    try {
      std::size_t pos = 0;
      const double v = std::stod(line, &pos);
      values.push_back(v);
    } catch (const std::exception&) {
      if (first_content_line) {
        first_content_line = false;  // header row
        continue;
      }
      throw IoError("load_population: malformed line in " + csv_path.string() +
                    ": " + line);
    }
    first_content_line = false;
  }
  if (values.empty()) {
    throw IoError("load_population: no values in " + csv_path.string());
  }
  if (label.empty()) label = csv_path.string();
  return Population(std::move(values), bounds, std::move(label));
}

void save_population(const Population& pop, const std::filesystem::path& csv_path,
                     const std::string& provenance) {
  std::ofstream out(csv_path);
  if (!out) {
    throw IoError("save_population: cannot write " + csv_path.string());
  }
  out << "# " << provenance << "\n";
  if (pop.bounds()) {
    out << "# bounds " << pop.bounds()->lower << " " << pop.bounds()->upper
        << "\n";
  }
  out << "value\n";
  char buf[64];
  for (double v : pop.values()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out << buf;
  }
  if (!out) {
    throw IoError("save_population: write failed for " + csv_path.string());
  }
}

}  // namespace dpamp
