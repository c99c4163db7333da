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

#include "dpamp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <omp.h>

#include "json.hpp"

#include "dpamp/amplification.hpp"
#include "dpamp/popgen.hpp"
#include "dpamp/sampling.hpp"

namespace dpamp {

namespace {

using json = nlohmann::ordered_json;

// Stream tags inside one replicate. Sample groups at list position j use
// tags (1 + 2j, 2 + 2j) for selection and noise, so adding or removing a
// size never shifts the streams of the others.
constexpr std::uint64_t kPopulationNoiseTag = 0;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Per-group constants that do not depend on the replicate.
struct GroupPlan {
  std::int64_t n = 0;
  bool is_population = false;
  std::uint64_t selection_tag = 0;
  std::uint64_t noise_tag = 0;
  PrivacyBudget budget;  // amplified for samples, target for the population
};

struct ProtocolPlan {
  Population population;
  double true_value = 0.0;
  double population_sensitivity = 0.0;
  double population_scale = 0.0;
  std::vector<GroupPlan> groups;  // population group first
};

double statistic_of(const Population& pop, Statistic stat) {
  return stat == Statistic::kMean ? mean_of(pop.values())
                                  : median_of_sorted(pop.sorted_values());
}

// Sensitivity the mechanism calibrates noise against, and the implied scale.
double mechanism_sensitivity(const Population& pop, Statistic stat,
                             Mechanism mech, const PrivacyBudget& budget) {
  if (mech == Mechanism::kSmoothLaplace) {
    return smooth_sensitivity_median(pop, budget).value;
  }
  if (stat == Statistic::kMean) return global_sensitivity_mean(pop).value;
  return global_sensitivity_median(pop).value;
}

double mechanism_scale(double sensitivity, Mechanism mech,
                       const PrivacyBudget& budget) {
  return mech == Mechanism::kSmoothLaplace ? 2.0 * sensitivity / budget.epsilon
                                           : sensitivity / budget.epsilon;
}

ProtocolPlan make_plan(const ExperimentSpec& spec) {
  ProtocolPlan plan{spec.source.realize(), 0.0, 0.0, 0.0, {}};
  spec.validate(plan.population.size());
  plan.true_value = statistic_of(plan.population, spec.statistic);
  plan.population_sensitivity = mechanism_sensitivity(
      plan.population, spec.statistic, spec.mechanism, spec.target);
  plan.population_scale =
      mechanism_scale(plan.population_sensitivity, spec.mechanism, spec.target);

  GroupPlan pop_group;
  pop_group.n = plan.population.size();
  pop_group.is_population = true;
  pop_group.noise_tag = kPopulationNoiseTag;
  pop_group.budget = spec.target;
  plan.groups.push_back(pop_group);

  for (std::size_t j = 0; j < spec.sample_sizes.size(); ++j) {
    const std::int64_t n = spec.sample_sizes[j];
    GroupPlan g;
    g.n = n;
    g.is_population = n == plan.population.size();
    g.selection_tag = 1 + 2 * static_cast<std::uint64_t>(j);
    g.noise_tag = 2 + 2 * static_cast<std::uint64_t>(j);
    const double rate =
        static_cast<double>(n) / static_cast<double>(plan.population.size());
    g.budget = g.is_population ? spec.target : amplified_budget(spec.target, rate);
    plan.groups.push_back(g);
  }
  return plan;
}

// One replicate of the protocol: fills one record per group.
void run_replicate(const ExperimentSpec& spec, const ProtocolPlan& plan,
                   std::int64_t t, RngStream base,
                   std::vector<std::vector<ReplicateRecord>>& records) {
  // Step 1: privatized population statistic at the target budget.
  ReplicateRecord pop_rec;
  pop_rec.replicate = t;
  pop_rec.n = plan.population.size();
  pop_rec.raw = plan.true_value;
  pop_rec.sensitivity = plan.population_sensitivity;
  pop_rec.noise_scale = plan.population_scale;
  {
    RngStream noise_rng = base.fork(kPopulationNoiseTag);
    pop_rec.noise = laplace_sample({0.0, plan.population_scale}, noise_rng);
  }
  pop_rec.noisy = pop_rec.raw + pop_rec.noise;
  pop_rec.eps_n = spec.target.epsilon;
  pop_rec.delta_n = spec.target.delta;
  records[0][static_cast<std::size_t>(t - 1)] = pop_rec;

  // Steps 2 and 3 per requested size; n == N aliases the population record.
  for (std::size_t g = 1; g < plan.groups.size(); ++g) {
    const GroupPlan& group = plan.groups[g];
    if (group.is_population) {
      records[g][static_cast<std::size_t>(t - 1)] = pop_rec;
      continue;
    }
    RngStream sel_rng = base.fork(group.selection_tag);
    auto [sel, sample] = srswor(plan.population, group.n, sel_rng);

    ReplicateRecord rec;
    rec.replicate = t;
    rec.n = group.n;
    rec.raw = statistic_of(sample, spec.statistic);
    rec.sensitivity = mechanism_sensitivity(sample, spec.statistic,
                                            spec.mechanism, group.budget);
    rec.noise_scale = mechanism_scale(rec.sensitivity, spec.mechanism, group.budget);
    RngStream noise_rng = base.fork(group.noise_tag);
    rec.noise = laplace_sample({0.0, rec.noise_scale}, noise_rng);
    rec.noisy = rec.raw + rec.noise;
    rec.eps_n = group.budget.epsilon;
    rec.delta_n = group.budget.delta;
    records[g][static_cast<std::size_t>(t - 1)] = rec;
  }
}

ExperimentResult assemble_result(const ExperimentSpec& spec, ProtocolPlan&& plan,
                                 std::vector<std::vector<ReplicateRecord>>&& records) {
  ExperimentResult result;
  result.population_size = plan.population.size();
  result.true_value = plan.true_value;
  result.population_sensitivity = plan.population_sensitivity;
  result.target = spec.target;
  result.statistic = spec.statistic;
  result.mechanism = spec.mechanism;
  result.population_label = plan.population.label();
  for (const GroupPlan& g : plan.groups) result.group_sizes.push_back(g.n);
  result.records = std::move(records);
  result.aggregates =
      aggregate_records(result.group_sizes, result.records, result.population_size,
                        result.true_value, result.population_sensitivity);
  return result;
}

}  // namespace

const char* to_string(Mechanism mech) {
  switch (mech) {
    case Mechanism::kGlobalLaplace: return "global-laplace";
    case Mechanism::kSmoothLaplace: return "smooth-laplace";
  }
  return "?";
}

Population PopulationSource::realize() const {
  switch (kind) {
    case Kind::kBeta:
      return gen_beta(size, a, b, RngStream(seed, 0));
    case Kind::kLognormal:
      return gen_lognormal(size, mu, sigma, RngStream(seed, 0));
    case Kind::kBimodalBetaMix:
      return gen_bimodal_beta_mix(size, RngStream(seed, 0));
    case Kind::kCsv:
      return load_population(csv_path, bounds);
  }
  throw std::invalid_argument("PopulationSource: unknown kind");
}

void ExperimentSpec::validate(std::int64_t population_size) const {
  if (replicates < 1) {
    throw std::invalid_argument("ExperimentSpec: replicates must be >= 1");
  }
  (void)PrivacyBudget(target.epsilon, target.delta);
  if (mechanism == Mechanism::kSmoothLaplace) {
    if (statistic != Statistic::kMedian) {
      throw std::invalid_argument(
          "ExperimentSpec: the smooth mechanism is defined for the median only");
    }
    if (target.delta <= 0.0) {
      throw std::invalid_argument(
          "ExperimentSpec: smooth mechanism needs delta > 0");
    }
    if (population_size % 2 == 0) {
      throw std::invalid_argument(
          "ExperimentSpec: smooth median needs an odd population size");
    }
  } else if (target.delta != 0.0) {
    throw std::invalid_argument(
        "ExperimentSpec: the global Laplace mechanism is pure-epsilon; delta must be 0");
  }
  for (std::int64_t n : sample_sizes) {
    if (n < 1 || n > population_size) {
      throw std::invalid_argument("ExperimentSpec: sample sizes must lie in [1, N]");
    }
    if (mechanism == Mechanism::kSmoothLaplace && n % 2 == 0) {
      throw std::invalid_argument(
          "ExperimentSpec: smooth median needs odd sample sizes");
    }
    const double rate =
        static_cast<double>(n) / static_cast<double>(population_size);
    if (n != population_size) {
      (void)amplified_budget(target, rate);  // validates delta / rate < 1
    }
  }
  for (double e : epsilons) {
    if (!(e > 0.0)) {
      throw std::invalid_argument("ExperimentSpec: epsilons must be positive");
    }
  }
  for (double r : rates) {
    if (!(r > 0.0 && r <= 1.0)) {
      throw std::invalid_argument("ExperimentSpec: rates must lie in (0, 1]");
    }
  }
}

ExperimentResult run_protocol(const ExperimentSpec& spec, int threads) {
  ProtocolPlan plan = make_plan(spec);
  const std::int64_t T = spec.replicates;
  std::vector<std::vector<ReplicateRecord>> records(
      plan.groups.size(), std::vector<ReplicateRecord>(static_cast<std::size_t>(T)));

  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (std::int64_t t = 1; t <= T; ++t) {
    run_replicate(spec, plan, t, RngStream(spec.master_seed, static_cast<std::uint64_t>(t)),
                  records);
  }
  return assemble_result(spec, std::move(plan), std::move(records));
}

ExperimentResult run_protocol_serial(const ExperimentSpec& spec) {
  ProtocolPlan plan = make_plan(spec);
  const std::int64_t T = spec.replicates;
  std::vector<std::vector<ReplicateRecord>> records(
      plan.groups.size(), std::vector<ReplicateRecord>(static_cast<std::size_t>(T)));
  for (std::int64_t t = 1; t <= T; ++t) {
    run_replicate(spec, plan, t, RngStream(spec.master_seed, static_cast<std::uint64_t>(t)),
                  records);
  }
  return assemble_result(spec, std::move(plan), std::move(records));
}

double quantile_of_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) {
    throw std::invalid_argument("quantile_of_sorted: empty input");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("quantile_of_sorted: p must lie in [0, 1]");
  }
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<GroupAggregate> aggregate_records(
    const std::vector<std::int64_t>& group_sizes,
    const std::vector<std::vector<ReplicateRecord>>& records,
    std::int64_t population_size, double true_value,
    double population_sensitivity) {
  std::vector<GroupAggregate> out;
  for (std::size_t g = 0; g < group_sizes.size(); ++g) {
    const auto& recs = records[g];
    const auto T = static_cast<double>(recs.size());
    GroupAggregate agg;
    agg.n = group_sizes[g];
    agg.rate = static_cast<double>(agg.n) / static_cast<double>(population_size);
    agg.eps_n = recs.front().eps_n;
    agg.delta_n = recs.front().delta_n;

    double se_sum = 0.0, noise_sum = 0.0, noise_sq = 0.0;
    double raw_sum = 0.0, scale_sq = 0.0;
    std::vector<double> ratios;
    ratios.reserve(recs.size());
    for (const ReplicateRecord& r : recs) {
      const double err = r.noisy - true_value;
      se_sum += err * err;
      noise_sum += r.noise;
      noise_sq += r.noise * r.noise;
      raw_sum += r.raw;
      scale_sq += 2.0 * r.noise_scale * r.noise_scale;
      ratios.push_back(r.sensitivity / population_sensitivity);
    }
    agg.mse_vs_true = se_sum / T;
    agg.expected_noise_variance = scale_sq / T;
    if (recs.size() > 1) {
      const double noise_mean = noise_sum / T;
      const double raw_mean = raw_sum / T;
      double noise_ss = 0.0, raw_ss = 0.0;
      for (const ReplicateRecord& r : recs) {
        noise_ss += (r.noise - noise_mean) * (r.noise - noise_mean);
        raw_ss += (r.raw - raw_mean) * (r.raw - raw_mean);
      }
      agg.noise_variance = noise_ss / (T - 1.0);
      agg.raw_variance = raw_ss / (T - 1.0);
    }
    std::sort(ratios.begin(), ratios.end());
    agg.sens_ratio_q25 = quantile_of_sorted(ratios, 0.25);
    agg.sens_ratio_median = quantile_of_sorted(ratios, 0.5);
    agg.sens_ratio_q75 = quantile_of_sorted(ratios, 0.75);
    out.push_back(agg);
  }
  return out;
}

std::vector<MseCurvePoint> mse_curve(const ExperimentSpec& spec, int threads) {
  Population population = spec.source.realize();
  spec.validate(population.size());
  const std::int64_t N = population.size();
  const double true_value = statistic_of(population, spec.statistic);
  const std::vector<double> eps_grid =
      spec.epsilons.empty() ? std::vector<double>{spec.target.epsilon}
                            : spec.epsilons;
  if (spec.rates.empty()) {
    throw std::invalid_argument("mse_curve: spec.rates must be nonempty");
  }
  const std::int64_t T = spec.replicates;

  struct Cell {
    double epsilon;
    double rate;  // 1.0 marks the population cell
    std::int64_t n;
    std::uint64_t id;
    PrivacyBudget budget;  // budget spent where the noise is drawn
  };
  std::vector<Cell> cells;
  std::uint64_t next_id = 1;
  for (double eps : eps_grid) {
    const PrivacyBudget target(eps, spec.target.delta);
    for (double rate : spec.rates) {
      // Nearest odd sample size, so the smooth median stays defined.
      auto n = static_cast<std::int64_t>(
          std::llround(rate * static_cast<double>(N)));
      n = std::max<std::int64_t>(1, std::min(n, N));
      if (n % 2 == 0) ++n;
      n = std::min(n, N);
      const double exact_rate = static_cast<double>(n) / static_cast<double>(N);
      cells.push_back({eps, rate, n, next_id++,
                       n == N ? target : amplified_budget(target, exact_rate)});
    }
    cells.push_back({eps, 1.0, N, next_id++, target});
  }

  std::vector<double> mse(cells.size(), 0.0);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    // Population cells share one sensitivity; compute it outside the loop.
    double pop_scale = 0.0;
    if (cell.n == N) {
      const double sens = mechanism_sensitivity(population, spec.statistic,
                                                spec.mechanism, cell.budget);
      pop_scale = mechanism_scale(sens, spec.mechanism, cell.budget);
    }
    // Squared errors land in per-replicate slots and are folded serially, so
    // the sum is bit-identical for any thread count.
    std::vector<double> squared_error(static_cast<std::size_t>(T));
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::int64_t t = 1; t <= T; ++t) {
      RngStream base(spec.master_seed,
                     (cell.id << 32) | static_cast<std::uint64_t>(t));
      double noisy;
      if (cell.n == N) {
        RngStream noise_rng = base.fork(kPopulationNoiseTag);
        noisy = true_value + laplace_sample({0.0, pop_scale}, noise_rng);
      } else {
        RngStream sel_rng = base.fork(1);
        auto [sel, sample] = srswor(population, cell.n, sel_rng);
        const double raw = statistic_of(sample, spec.statistic);
        const double sens = mechanism_sensitivity(sample, spec.statistic,
                                                  spec.mechanism, cell.budget);
        RngStream noise_rng = base.fork(2);
        noisy = raw + laplace_sample(
                          {0.0, mechanism_scale(sens, spec.mechanism, cell.budget)},
                          noise_rng);
      }
      const double err = noisy - true_value;
      squared_error[static_cast<std::size_t>(t - 1)] = err * err;
    }
    double se_sum = 0.0;
    for (double se : squared_error) se_sum += se;
    mse[c] = se_sum / static_cast<double>(T);
  }

  std::vector<MseCurvePoint> out;
  out.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    out.push_back({cells[c].epsilon, cells[c].rate, cells[c].n, mse[c],
                   std::log(mse[c])});
  }
  return out;
}

std::vector<NoiseQuantiles> noise_distribution_study(const ExperimentSpec& spec,
                                                     int threads) {
  const ExperimentResult result = run_protocol(spec, threads);
  std::vector<NoiseQuantiles> out;
  for (std::size_t g = 0; g < result.group_sizes.size(); ++g) {
    std::vector<double> abs_noise;
    abs_noise.reserve(result.records[g].size());
    double sum = 0.0;
    for (const ReplicateRecord& r : result.records[g]) {
      abs_noise.push_back(std::abs(r.noise));
      sum += r.noise;
    }
    std::sort(abs_noise.begin(), abs_noise.end());
    NoiseQuantiles q;
    q.n = result.group_sizes[g];
    q.abs_q50 = quantile_of_sorted(abs_noise, 0.5);
    q.abs_q90 = quantile_of_sorted(abs_noise, 0.9);
    q.abs_q99 = quantile_of_sorted(abs_noise, 0.99);
    q.abs_max = abs_noise.back();
    const double mean = sum / static_cast<double>(abs_noise.size());
    double ss = 0.0;
    for (const ReplicateRecord& r : result.records[g]) {
      ss += (r.noise - mean) * (r.noise - mean);
    }
    q.variance = abs_noise.size() > 1
                     ? ss / (static_cast<double>(abs_noise.size()) - 1.0)
                     : 0.0;
    out.push_back(q);
  }
  return out;
}

VarianceDecomposition variance_decomposition(const ExperimentResult& result,
                                             std::int64_t n) {
  for (const GroupAggregate& agg : result.aggregates) {
    if (agg.n == n) {
      return {agg.expected_noise_variance, agg.raw_variance};
    }
  }
  throw std::invalid_argument("variance_decomposition: no group with n = " +
                              std::to_string(n));
}

// ---------------------------------------------------------------------------
// JSON spec round-trip.

namespace {

PopulationSource source_from_json(const json& j) {
  PopulationSource src;
  if (j.contains("csv")) {
    src.kind = PopulationSource::Kind::kCsv;
    src.csv_path = j.at("csv").get<std::string>();
    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      src.bounds = Bounds{b.at(0).get<double>(), b.at(1).get<double>()};
    }
    return src;
  }
  const auto gen = j.at("generator").get<std::string>();
  src.size = j.at("N").get<std::int64_t>();
  src.seed = j.at("seed").get<std::uint64_t>();
  if (gen == "beta") {
    src.kind = PopulationSource::Kind::kBeta;
    src.a = j.at("a").get<double>();
    src.b = j.at("b").get<double>();
  } else if (gen == "lognormal") {
    src.kind = PopulationSource::Kind::kLognormal;
    src.mu = j.at("mu").get<double>();
    src.sigma = j.at("sigma").get<double>();
  } else if (gen == "bimodal-beta-mix") {
    src.kind = PopulationSource::Kind::kBimodalBetaMix;
  } else {
    throw std::invalid_argument("ExperimentSpec: unknown generator '" + gen + "'");
  }
  return src;
}

json source_to_json(const PopulationSource& src) {
  json j;
  switch (src.kind) {
    case PopulationSource::Kind::kCsv:
      j["csv"] = src.csv_path;
      if (src.bounds) j["bounds"] = {src.bounds->lower, src.bounds->upper};
      return j;
    case PopulationSource::Kind::kBeta:
      j["generator"] = "beta";
      j["N"] = src.size;
      j["a"] = src.a;
      j["b"] = src.b;
      break;
    case PopulationSource::Kind::kLognormal:
      j["generator"] = "lognormal";
      j["N"] = src.size;
      j["mu"] = src.mu;
      j["sigma"] = src.sigma;
      break;
    case PopulationSource::Kind::kBimodalBetaMix:
      j["generator"] = "bimodal-beta-mix";
      j["N"] = src.size;
      break;
  }
  j["seed"] = src.seed;
  return j;
}

}  // namespace

ExperimentSpec ExperimentSpec::parse_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("ExperimentSpec: JSON parse error: ") + e.what());
  }
  try {
    ExperimentSpec spec;
    spec.source = source_from_json(j.at("population"));
    const auto stat = j.at("statistic").get<std::string>();
    if (stat == "mean") {
      spec.statistic = Statistic::kMean;
    } else if (stat == "median") {
      spec.statistic = Statistic::kMedian;
    } else {
      throw std::invalid_argument("ExperimentSpec: unknown statistic '" + stat + "'");
    }
    const auto mech = j.at("mechanism").get<std::string>();
    if (mech == "global-laplace") {
      spec.mechanism = Mechanism::kGlobalLaplace;
    } else if (mech == "smooth-laplace") {
      spec.mechanism = Mechanism::kSmoothLaplace;
    } else {
      throw std::invalid_argument("ExperimentSpec: unknown mechanism '" + mech + "'");
    }
    spec.target = PrivacyBudget(j.at("epsilon").get<double>(),
                                j.value("delta", 0.0));
    if (j.contains("epsilons")) {
      spec.epsilons = j.at("epsilons").get<std::vector<double>>();
    }
    if (j.contains("sample_sizes")) {
      spec.sample_sizes = j.at("sample_sizes").get<std::vector<std::int64_t>>();
    }
    if (j.contains("rates")) {
      spec.rates = j.at("rates").get<std::vector<double>>();
    }
    spec.replicates = j.at("replicates").get<std::int64_t>();
    spec.master_seed = j.value("master_seed", std::uint64_t{0});
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("ExperimentSpec: bad spec: ") + e.what());
  }
}

ExperimentSpec ExperimentSpec::load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("ExperimentSpec: cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

std::string ExperimentSpec::to_json() const {
  json j;
  j["population"] = source_to_json(source);
  j["statistic"] = to_string(statistic);
  j["mechanism"] = to_string(mechanism);
  j["epsilon"] = target.epsilon;
  j["delta"] = target.delta;
  if (!epsilons.empty()) j["epsilons"] = epsilons;
  if (!sample_sizes.empty()) j["sample_sizes"] = sample_sizes;
  if (!rates.empty()) j["rates"] = rates;
  j["replicates"] = replicates;
  j["master_seed"] = master_seed;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// CSV output. %.17g everywhere so re-runs are byte-identical.

void write_replicates_csv(const ExperimentResult& result,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_replicates_csv: cannot write " + path.string());
  out << "# dpamp replicates schema v1\n";
  out << "# statistic=" << to_string(result.statistic)
      << " mechanism=" << to_string(result.mechanism)
      << " epsilon=" << fmt_double(result.target.epsilon)
      << " delta=" << fmt_double(result.target.delta) << "\n";
  out << "# population N=" << result.population_size
      << " true=" << fmt_double(result.true_value)
      << " sensitivity=" << fmt_double(result.population_sensitivity) << " label="
      << result.population_label << "\n";
  out << "replicate,n,rate,raw,sensitivity,noise_scale,noise,noisy,eps_n,delta_n\n";
  for (std::size_t g = 0; g < result.group_sizes.size(); ++g) {
    for (const ReplicateRecord& r : result.records[g]) {
      const double rate = static_cast<double>(r.n) /
                          static_cast<double>(result.population_size);
      out << r.replicate << ',' << r.n << ',' << fmt_double(rate) << ','
          << fmt_double(r.raw) << ',' << fmt_double(r.sensitivity) << ','
          << fmt_double(r.noise_scale) << ',' << fmt_double(r.noise) << ','
          << fmt_double(r.noisy) << ',' << fmt_double(r.eps_n) << ','
          << fmt_double(r.delta_n) << '\n';
    }
  }
  if (!out) throw IoError("write_replicates_csv: write failed for " + path.string());
}

void write_aggregates_csv(const ExperimentResult& result,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_aggregates_csv: cannot write " + path.string());
  out << "# dpamp aggregates schema v1\n";
  out << "# statistic=" << to_string(result.statistic)
      << " mechanism=" << to_string(result.mechanism)
      << " epsilon=" << fmt_double(result.target.epsilon)
      << " delta=" << fmt_double(result.target.delta)
      << " true=" << fmt_double(result.true_value) << "\n";
  out << "n,rate,eps_n,delta_n,mse_vs_true,noise_variance,expected_noise_variance,"
         "raw_variance,sens_ratio_q25,sens_ratio_median,sens_ratio_q75\n";
  for (const GroupAggregate& a : result.aggregates) {
    out << a.n << ',' << fmt_double(a.rate) << ',' << fmt_double(a.eps_n) << ','
        << fmt_double(a.delta_n) << ',' << fmt_double(a.mse_vs_true) << ','
        << fmt_double(a.noise_variance) << ','
        << fmt_double(a.expected_noise_variance) << ','
        << fmt_double(a.raw_variance) << ',' << fmt_double(a.sens_ratio_q25)
        << ',' << fmt_double(a.sens_ratio_median) << ','
        << fmt_double(a.sens_ratio_q75) << '\n';
  }
  if (!out) throw IoError("write_aggregates_csv: write failed for " + path.string());
}

void write_mse_curve_csv(const std::vector<MseCurvePoint>& curve,
                         const ExperimentSpec& spec,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_mse_curve_csv: cannot write " + path.string());
  out << "# dpamp mse-curve schema v1\n";
  out << "# statistic=" << to_string(spec.statistic)
      << " mechanism=" << to_string(spec.mechanism)
      << " delta=" << fmt_double(spec.target.delta)
      << " replicates=" << spec.replicates
      << " master_seed=" << spec.master_seed << "\n";
  out << "epsilon,rate,n,mse,log_mse\n";
  for (const MseCurvePoint& p : curve) {
    out << fmt_double(p.epsilon) << ',' << fmt_double(p.rate) << ',' << p.n
        << ',' << fmt_double(p.mse) << ',' << fmt_double(p.log_mse) << '\n';
  }
  if (!out) throw IoError("write_mse_curve_csv: write failed for " + path.string());
}

}  // namespace dpamp
