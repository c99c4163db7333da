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

// Batch CLI over the library. stdout carries machine-readable output only
// (JSON records or CSV tables); diagnostics go to stderr. Exit codes:
// 0 success, 2 validation failure, 3 I/O failure, 4 guard exceeded.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpamp/amplification.hpp"
#include "dpamp/core.hpp"
#include "dpamp/experiments.hpp"
#include "dpamp/mechanisms.hpp"
#include "dpamp/oracle.hpp"
#include "dpamp/popgen.hpp"
#include "dpamp/sensitivity.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace dpamp;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitGuard = 4;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::optional<Bounds> parse_bounds(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("--bounds expects 'lower,upper'");
  }
  return Bounds{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

json budget_json(const PrivacyBudget& b) {
  return json{{"epsilon", b.epsilon}, {"delta", b.delta}};
}

// ---------------------------------------------------------------------------

struct AmplifyArgs {
  double eps = 0.0;
  double delta = 0.0;
  double rate = -1.0;
  std::int64_t n = -1, N = -1;
  std::string direction = "to-sample";
};

int run_amplify(const AmplifyArgs& a) {
  double rate = a.rate;
  if (rate < 0.0) {
    if (a.n < 0 || a.N < 0) {
      throw std::invalid_argument("amplify: pass --rate or both --n and --N");
    }
    rate = static_cast<double>(a.n) / static_cast<double>(a.N);
  }
  const PrivacyBudget input(a.eps, a.delta);
  AmplificationResult res;
  res.rate = rate;
  if (a.direction == "to-sample") {
    res.direction = AmplifyDirection::kSampleFromTarget;
    res.target = input;
    res.sample_budget = amplified_budget(input, rate);
  } else if (a.direction == "to-effective") {
    res.direction = AmplifyDirection::kEffectiveFromSample;
    res.sample_budget = input;
    res.target = effective_budget(input, rate);
  } else {
    throw std::invalid_argument("amplify: --direction must be to-sample or to-effective");
  }
  json j;
  j["direction"] = a.direction;
  j["rate"] = res.rate;
  if (a.n >= 0) j["n"] = a.n;
  if (a.N >= 0) j["N"] = a.N;
  j["input"] = budget_json(input);
  j["target"] = budget_json(res.target);
  j["sample_budget"] = budget_json(res.sample_budget);
  emit(j);
  return 0;
}

// ---------------------------------------------------------------------------

struct SensitivityArgs {
  std::string input;
  std::string statistic = "mean";
  std::string kind = "global";
  double eps = 0.0, delta = 0.0;
  std::string bounds;
  bool no_prune = false;
};

int run_sensitivity(const SensitivityArgs& a) {
  const Population pop = load_population(a.input, parse_bounds(a.bounds));
  const Statistic stat = a.statistic == "mean"     ? Statistic::kMean
                         : a.statistic == "median" ? Statistic::kMedian
                                                   : throw std::invalid_argument(
                                                         "sensitivity: --statistic must "
                                                         "be mean or median");
  SensitivityReport report;
  if (a.kind == "global") {
    report = stat == Statistic::kMean ? global_sensitivity_mean(pop)
                                      : global_sensitivity_median(pop);
  } else if (a.kind == "local") {
    report = stat == Statistic::kMean ? local_sensitivity_mean(pop)
                                      : local_sensitivity_median(pop);
  } else if (a.kind == "smooth") {
    if (stat != Statistic::kMedian) {
      throw std::invalid_argument(
          "sensitivity: smooth sensitivity is defined for the median only");
    }
    report = smooth_sensitivity_median(pop, PrivacyBudget(a.eps, a.delta),
                                       SmoothOptions{!a.no_prune});
  } else {
    throw std::invalid_argument("sensitivity: --kind must be global, local or smooth");
  }
  json j;
  j["input"] = a.input;
  j["N"] = pop.size();
  j["statistic"] = to_string(report.statistic);
  j["kind"] = to_string(report.kind);
  j["value"] = report.value;
  if (report.params) {
    j["epsilon"] = report.params->epsilon;
    j["delta"] = report.params->delta;
    j["beta"] = report.params->beta;
  }
  if (report.argmax_k) j["argmax_k"] = *report.argmax_k;
  emit(j);
  return 0;
}

// ---------------------------------------------------------------------------

struct PrivatizeArgs {
  std::string input;
  std::string statistic = "mean";
  std::string mechanism = "global-laplace";
  double eps = 0.0, delta = 0.0;
  std::string bounds;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  bool clamp = false;
};

int run_privatize(const PrivatizeArgs& a) {
  const Population pop = load_population(a.input, parse_bounds(a.bounds));
  RngStream rng(a.seed, a.stream);
  const PrivacyBudget budget(a.eps, a.delta);
  PrivatizedEstimate est;
  if (a.mechanism == "global-laplace") {
    const Statistic stat = a.statistic == "mean" ? Statistic::kMean : Statistic::kMedian;
    const PopulationStats stats = population_stats(pop);
    const double raw = stat == Statistic::kMean ? stats.mean : stats.median;
    const SensitivityReport sens = stat == Statistic::kMean
                                       ? global_sensitivity_mean(pop)
                                       : global_sensitivity_median(pop);
    est = privatize_global(raw, sens, budget, rng);
  } else if (a.mechanism == "smooth-laplace") {
    if (a.statistic != "median") {
      throw std::invalid_argument("privatize: smooth-laplace supports the median only");
    }
    est = privatize_smooth_median(pop, budget, rng, a.clamp);
  } else {
    throw std::invalid_argument(
        "privatize: --mechanism must be global-laplace or smooth-laplace");
  }
  json j;
  j["input"] = a.input;
  j["statistic"] = a.statistic;
  j["mechanism"] = a.mechanism;
  j["seed"] = a.seed;
  j["stream"] = a.stream;
  j["raw_value"] = est.raw_value;
  j["noisy_value"] = est.noisy_value;
  j["noise_scale"] = est.noise_scale;
  j["noise"] = est.noise();
  j["budget"] = budget_json(est.budget);
  j["sensitivity"] = json{{"kind", to_string(est.sensitivity.kind)},
                          {"value", est.sensitivity.value}};
  emit(j);
  return 0;
}

// ---------------------------------------------------------------------------

struct PopgenArgs {
  std::string generator = "beta";
  std::int64_t N = 0;
  double a = 2.0, b = 10.0;
  double mu = 5.0, sigma = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

int run_popgen(const PopgenArgs& a) {
  Population pop = [&] {
    if (a.generator == "beta") return gen_beta(a.N, a.a, a.b, RngStream(a.seed, 0));
    if (a.generator == "lognormal") {
      return gen_lognormal(a.N, a.mu, a.sigma, RngStream(a.seed, 0));
    }
    if (a.generator == "bimodal-beta-mix") {
      return gen_bimodal_beta_mix(a.N, RngStream(a.seed, 0));
    }
    throw std::invalid_argument(
        "popgen: --generator must be beta, lognormal or bimodal-beta-mix");
  }();
  save_population(pop, a.out, pop.label());
  std::cerr << "wrote " << pop.size() << " values to " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string spec_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
};

int run_simulate(const SimulateArgs& a) {
  ExperimentSpec spec = ExperimentSpec::load_json_file(a.spec_path);
  spec.master_seed = a.seed;
  const double t0 = omp_get_wtime();
  const ExperimentResult result = run_protocol(spec, a.threads);
  const double elapsed = omp_get_wtime() - t0;

  std::filesystem::create_directories(a.out_dir);
  const auto rep_path = std::filesystem::path(a.out_dir) / "replicates.csv";
  const auto agg_path = std::filesystem::path(a.out_dir) / "aggregates.csv";
  write_replicates_csv(result, rep_path);
  write_aggregates_csv(result, agg_path);

  char summary[256];
  std::snprintf(summary, sizeof summary,
                "simulate: T=%lld wall=%.2fs outputs=%s,%s\n",
                static_cast<long long>(spec.replicates), elapsed,
                rep_path.string().c_str(), agg_path.string().c_str());
  std::cout << summary;
  return 0;
}

int run_mse_curve(const SimulateArgs& a) {
  ExperimentSpec spec = ExperimentSpec::load_json_file(a.spec_path);
  spec.master_seed = a.seed;
  const double t0 = omp_get_wtime();
  const auto curve = mse_curve(spec, a.threads);
  const double elapsed = omp_get_wtime() - t0;

  std::filesystem::create_directories(a.out_dir);
  const auto path = std::filesystem::path(a.out_dir) / "mse_curve.csv";
  write_mse_curve_csv(curve, spec, path);
  char summary[256];
  std::snprintf(summary, sizeof summary, "mse-curve: cells=%zu wall=%.2fs output=%s\n",
                curve.size(), elapsed, path.string().c_str());
  std::cout << summary;
  return 0;
}

// ---------------------------------------------------------------------------

struct CriticalEpsArgs {
  double rate = -1.0;
  std::vector<double> rates;
};

int run_critical_eps(const CriticalEpsArgs& a) {
  if (!a.rates.empty()) {
    std::cout << "# dpamp critical-eps schema v1\n";
    std::cout << "rate,eps,eps_n\n";
    char buf[128];
    for (double rate : a.rates) {
      const CriticalEps ce = critical_eps_for_unit_ratio(rate);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", rate, ce.eps, ce.eps_n);
      std::cout << buf;
    }
    return 0;
  }
  if (a.rate < 0.0) {
    throw std::invalid_argument("critical-eps: pass --rate or --rates");
  }
  const CriticalEps ce = critical_eps_for_unit_ratio(a.rate);
  json j;
  j["rate"] = a.rate;
  j["eps"] = ce.eps;
  j["eps_n"] = ce.eps_n;
  j["noise_ratio_residual"] = std::abs((a.rate * ce.eps_n / ce.eps) *
                                           (a.rate * ce.eps_n / ce.eps) -
                                       1.0);
  emit(j);
  return 0;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  double eps = 0.0;
  double rate = 0.0;
  double R = 0.0;
  std::int64_t N = 0;
  double S2 = -1.0;
};

int run_bounds(const BoundsArgs& a) {
  json j;
  j["epsilon"] = a.eps;
  j["rate"] = a.rate;
  j["q_bound"] = q_bound(a.eps, a.rate);
  j["q_bound_small_eps"] = q_bound_small_eps(a.rate);
  j["noise_ratio_mean"] = noise_ratio_mean(a.eps, a.rate);
  if (a.R > 0.0 && a.N > 0) {
    const double sens = a.R / static_cast<double>(a.N);
    j["global_sensitivity_mean"] = sens;
    j["no_gain_threshold"] = no_gain_threshold(sens, a.eps, a.rate);
    j["mean_variance_population"] = mean_variance_population(a.R, a.N, a.eps);
    if (a.S2 >= 0.0) {
      auto n = static_cast<std::int64_t>(
          std::llround(a.rate * static_cast<double>(a.N)));
      n = std::max<std::int64_t>(1, std::min(n, a.N));
      const MeanVariance mv = mean_variance_sample(a.R, a.N, n, a.S2, a.eps);
      j["n"] = n;
      j["mean_variance_sample"] = json{{"total", mv.total},
                                       {"sampling", mv.sampling},
                                       {"noise", mv.noise}};
    }
  }
  emit(j);
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::int64_t N = 5;
  std::int64_t n = 2;
  double eps = 0.5;
  double delta = 0.0;
  std::int64_t pairs = 20;
  std::int64_t omegas = 1001;
  std::uint64_t seed = 1;
  double tol = 1e-12;
};

int run_verify(const VerifyArgs& a) {
  if (a.n < 1 || a.n > a.N) {
    throw std::invalid_argument("verify: need 1 <= n <= N");
  }
  RngStream rng(a.seed, 0);
  const Bounds bounds{0.0, 1.0};
  double worst = 0.0;
  for (std::int64_t p = 0; p < a.pairs; ++p) {
    std::vector<double> base(static_cast<std::size_t>(a.N));
    for (double& v : base) v = rng.next_unit();
    std::vector<double> other = base;
    const auto idx = static_cast<std::size_t>(
        rng.below(static_cast<std::uint64_t>(a.N)));
    other[idx] = rng.next_unit();
    const Population pa(base, bounds), pb(other, bounds);

    std::vector<double> omega_grid;
    omega_grid.reserve(static_cast<std::size_t>(a.omegas));
    // Cover the mixture locations and several noise scales around them.
    const double scale = (1.0 / static_cast<double>(a.n)) / a.eps;
    const double lo = -10.0 * scale, hi = 1.0 + 10.0 * scale;
    for (std::int64_t i = 0; i < a.omegas; ++i) {
      omega_grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(a.omegas - 1));
    }
    const auto report =
        verify_amplification(pa, pb, a.n, a.eps, a.delta, omega_grid);
    worst = std::max(worst, report.max_violation);
  }
  json j;
  j["N"] = a.N;
  j["n"] = a.n;
  j["epsilon"] = a.eps;
  j["delta"] = a.delta;
  j["pairs"] = a.pairs;
  j["omega_grid"] = a.omegas;
  j["max_violation"] = worst;
  j["tolerance"] = a.tol;
  j["pass"] = worst <= a.tol;
  emit(j);
  return j["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private means and medians with subsampling amplification"};
  app.require_subcommand(1);

  AmplifyArgs amp;
  auto* amplify = app.add_subcommand("amplify", "Convert budgets across sampling rates");
  amplify->add_option("--eps", amp.eps, "Input epsilon")->required();
  amplify->add_option("--delta", amp.delta, "Input delta (default 0)");
  amplify->add_option("--rate", amp.rate, "Sampling rate n/N in (0, 1]");
  amplify->add_option("--n", amp.n, "Sample size (with --N)");
  amplify->add_option("--N", amp.N, "Population size (with --n)");
  amplify->add_option("--direction", amp.direction,
                      "to-sample (amplify a target) or to-effective (guarantee of a sample budget)");

  SensitivityArgs sens;
  auto* sensitivity = app.add_subcommand("sensitivity", "Sensitivity of a statistic on a CSV dataset");
  sensitivity->add_option("--input", sens.input, "Single-column CSV")->required();
  sensitivity->add_option("--statistic", sens.statistic, "mean or median");
  sensitivity->add_option("--kind", sens.kind, "global, local or smooth");
  sensitivity->add_option("--eps", sens.eps, "Epsilon (smooth only)");
  sensitivity->add_option("--delta", sens.delta, "Delta (smooth only)");
  sensitivity->add_option("--bounds", sens.bounds, "lower,upper support bounds");
  sensitivity->add_flag("--no-prune", sens.no_prune, "Force the full envelope scan");

  PrivatizeArgs priv;
  auto* privatize = app.add_subcommand("privatize", "Release a noisy statistic from a CSV dataset");
  privatize->add_option("--input", priv.input, "Single-column CSV")->required();
  privatize->add_option("--statistic", priv.statistic, "mean or median");
  privatize->add_option("--mechanism", priv.mechanism, "global-laplace or smooth-laplace");
  privatize->add_option("--eps", priv.eps, "Epsilon")->required();
  privatize->add_option("--delta", priv.delta, "Delta (default 0)");
  privatize->add_option("--bounds", priv.bounds, "lower,upper support bounds");
  privatize->add_option("--seed", priv.seed, "Master seed")->required();
  privatize->add_option("--stream", priv.stream, "Stream id (default 0)");
  privatize->add_flag("--clamp", priv.clamp, "Clamp the noisy value into the bounds");

  PopgenArgs pg;
  auto* popgen = app.add_subcommand("popgen", "Write a synthetic population CSV");
  popgen->add_option("--generator", pg.generator, "beta, lognormal or bimodal-beta-mix");
  popgen->add_option("--N", pg.N, "Population size")->required();
  popgen->add_option("--a", pg.a, "Beta shape a (default 2)");
  popgen->add_option("--b", pg.b, "Beta shape b (default 10)");
  popgen->add_option("--mu", pg.mu, "Lognormal mu (default 5)");
  popgen->add_option("--sigma", pg.sigma, "Lognormal sigma (default 0.5)");
  popgen->add_option("--seed", pg.seed, "Seed")->required();
  popgen->add_option("--out", pg.out, "Output CSV path")->required();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run the replication protocol from a JSON spec");
  simulate->add_option("--spec", sim.spec_path, "Spec JSON path")->required();
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();
  simulate->add_option("--seed", sim.seed, "Master seed (required; runs are never silently nondeterministic)")->required();
  simulate->add_option("--threads", sim.threads, "Worker threads (default: OpenMP)");

  SimulateArgs mse;
  auto* msec = app.add_subcommand("mse-curve", "MSE-vs-rate table from a JSON spec");
  msec->add_option("--spec", mse.spec_path, "Spec JSON path")->required();
  msec->add_option("--out", mse.out_dir, "Output directory")->required();
  msec->add_option("--seed", mse.seed, "Master seed (required)")->required();
  msec->add_option("--threads", mse.threads, "Worker threads (default: OpenMP)");

  CriticalEpsArgs ce;
  auto* critical = app.add_subcommand("critical-eps", "Unit-noise-ratio budget for a sampling rate");
  critical->add_option("--rate", ce.rate, "Sampling rate in (0, 1)");
  critical->add_option("--rates", ce.rates, "Rate list; emits a CSV curve");

  BoundsArgs bd;
  auto* bounds = app.add_subcommand("bounds", "Accuracy-gain bounds for the mean");
  bounds->add_option("--eps", bd.eps, "Target epsilon")->required();
  bounds->add_option("--rate", bd.rate, "Sampling rate in (0, 1]")->required();
  bounds->add_option("--R", bd.R, "Data range");
  bounds->add_option("--N", bd.N, "Population size");
  bounds->add_option("--S2", bd.S2, "Population variance (adds the sample decomposition)");

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "Exact subsampling-guarantee check on random neighbours");
  verify->add_option("--N", vf.N, "Population size (default 5)");
  verify->add_option("--n", vf.n, "Sample size (default 2)");
  verify->add_option("--eps", vf.eps, "Sample-level epsilon (default 0.5)");
  verify->add_option("--delta", vf.delta, "Sample-level delta (default 0)");
  verify->add_option("--pairs", vf.pairs, "Neighbour pairs to test (default 20)");
  verify->add_option("--omegas", vf.omegas, "Grid size (default 1001)");
  verify->add_option("--seed", vf.seed, "Seed (default 1)");
  verify->add_option("--tol", vf.tol, "Violation tolerance (default 1e-12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*amplify) return run_amplify(amp);
    if (*sensitivity) return run_sensitivity(sens);
    if (*privatize) return run_privatize(priv);
    if (*popgen) return run_popgen(pg);
    if (*simulate) return run_simulate(sim);
    if (*msec) return run_mse_curve(mse);
    if (*critical) return run_critical_eps(ce);
    if (*bounds) return run_bounds(bd);
    if (*verify) return run_verify(vf);
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
