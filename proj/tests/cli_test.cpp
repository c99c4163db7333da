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

// End-to-end checks of the command-line surface: flag validation, exit
// codes, JSON/CSV contracts, and byte-level determinism.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DPAMP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  CliResult result;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) {
    result.out.append(buf, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "dpamp_cli_test";
  fs::create_directories(dir);
  return dir;
}

TEST(CliAmplifyTest, OnePercentAnchor) {
  const CliResult r = run_cli("amplify --eps 1 --rate 0.01 --direction to-sample");
  ASSERT_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["sample_budget"]["epsilon"].get<double>(), 5.152, 0.005);
  EXPECT_DOUBLE_EQ(j["target"]["epsilon"].get<double>(), 1.0);
}

TEST(CliAmplifyTest, UnitRateIdentity) {
  const CliResult r = run_cli("amplify --eps 0.7 --delta 0.001 --rate 1");
  ASSERT_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["sample_budget"]["epsilon"].get<double>(), 0.7);
  EXPECT_DOUBLE_EQ(j["sample_budget"]["delta"].get<double>(), 0.001);
}

TEST(CliAmplifyTest, RoundTripThroughBothDirections) {
  const CliResult fwd =
      run_cli("amplify --eps 0.3 --delta 1e-5 --n 101 --N 10001 --direction to-sample");
  ASSERT_EQ(fwd.exit_code, 0);
  const json jf = json::parse(fwd.out);
  std::ostringstream back_cmd;
  back_cmd.precision(17);
  back_cmd << "amplify --eps " << jf["sample_budget"]["epsilon"].get<double>()
           << " --delta " << jf["sample_budget"]["delta"].get<double>()
           << " --n 101 --N 10001 --direction to-effective";
  const CliResult back = run_cli(back_cmd.str());
  ASSERT_EQ(back.exit_code, 0);
  const json jb = json::parse(back.out);
  EXPECT_NEAR(jb["target"]["epsilon"].get<double>(), 0.3, 1e-12);
  EXPECT_NEAR(jb["target"]["delta"].get<double>(), 1e-5, 1e-17);
}

TEST(CliAmplifyTest, ValidationFailuresExitTwo) {
  EXPECT_EQ(run_cli("amplify --rate 0.5").exit_code, 2);          // missing --eps
  EXPECT_EQ(run_cli("amplify --eps 1 --rate 2").exit_code, 2);    // bad rate
  EXPECT_EQ(run_cli("amplify --eps -1 --rate 0.5").exit_code, 2); // bad eps
  EXPECT_EQ(run_cli("amplify --eps 1").exit_code, 2);             // no rate or n/N
}

TEST(CliPopgenSensitivityTest, FilePipeline) {
  const fs::path csv = test_dir() / "beta.csv";
  const CliResult gen = run_cli("popgen --generator beta --N 101 --seed 3 --out " +
                                csv.string());
  ASSERT_EQ(gen.exit_code, 0);

  const CliResult sens = run_cli("sensitivity --input " + csv.string() +
                                 " --statistic median --kind smooth --eps 1 "
                                 "--delta 0.25 --bounds 0,1");
  ASSERT_EQ(sens.exit_code, 0);
  const json j = json::parse(sens.out);
  EXPECT_EQ(j["kind"], "smooth");
  EXPECT_GT(j["value"].get<double>(), 0.0);
  EXPECT_TRUE(j.contains("beta"));
  EXPECT_TRUE(j.contains("argmax_k"));

  // Pruned and full evaluations agree through the CLI too.
  const CliResult full = run_cli("sensitivity --input " + csv.string() +
                                 " --statistic median --kind smooth --eps 1 "
                                 "--delta 0.25 --bounds 0,1 --no-prune");
  ASSERT_EQ(full.exit_code, 0);
  EXPECT_DOUBLE_EQ(json::parse(full.out)["value"].get<double>(),
                   j["value"].get<double>());
}

TEST(CliSensitivityTest, LibraryEquivalenceOnKnownDataset) {
  const fs::path csv = test_dir() / "five.csv";
  {
    std::ofstream out(csv);
    out << "value\n0\n0.25\n0.5\n0.75\n1\n";
  }
  const CliResult r = run_cli("sensitivity --input " + csv.string() +
                              " --statistic median --kind smooth --eps 1 "
                              "--delta 0.25 --bounds 0,1");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(json::parse(r.out)["value"].get<double>(), 0.4862, 2e-4);

  const CliResult local = run_cli("sensitivity --input " + csv.string() +
                                  " --statistic median --kind local");
  ASSERT_EQ(local.exit_code, 0);
  EXPECT_DOUBLE_EQ(json::parse(local.out)["value"].get<double>(), 0.25);

  const CliResult global = run_cli("sensitivity --input " + csv.string() +
                                   " --statistic mean --kind global --bounds 0,1");
  ASSERT_EQ(global.exit_code, 0);
  EXPECT_DOUBLE_EQ(json::parse(global.out)["value"].get<double>(), 0.2);
}

TEST(CliSensitivityTest, MissingFileExitsThree) {
  EXPECT_EQ(run_cli("sensitivity --input /nonexistent/x.csv --kind global "
                    "--bounds 0,1").exit_code,
            3);
}

TEST(CliPrivatizeTest, DeterministicGivenSeed) {
  const fs::path csv = test_dir() / "priv.csv";
  {
    std::ofstream out(csv);
    out << "value\n";
    for (int i = 0; i < 21; ++i) out << 0.1 + 0.03 * i << "\n";
  }
  const std::string cmd = "privatize --input " + csv.string() +
                          " --statistic median --mechanism smooth-laplace "
                          "--eps 0.5 --delta 0.01 --bounds 0,1 --seed 42";
  const CliResult a = run_cli(cmd);
  const CliResult b = run_cli(cmd);
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_NE(j["noisy_value"].get<double>(), j["raw_value"].get<double>());
  // A different stream gives a different draw.
  const CliResult c = run_cli(cmd + " --stream 1");
  EXPECT_NE(json::parse(c.out)["noisy_value"].get<double>(),
            j["noisy_value"].get<double>());
}

TEST(CliSimulateTest, RequiresSeedAndSpec) {
  const fs::path spec = test_dir() / "sim_spec.json";
  {
    std::ofstream out(spec);
    out << R"({
      "population": {"generator": "lognormal", "N": 501, "mu": 5.0, "sigma": 0.5, "seed": 2},
      "statistic": "median", "mechanism": "smooth-laplace",
      "epsilon": 0.5, "delta": 0.000998,
      "sample_sizes": [51], "replicates": 40
    })";
  }
  const fs::path out_dir = test_dir() / "sim_out";
  EXPECT_EQ(run_cli("simulate --spec " + spec.string() + " --out " +
                    out_dir.string()).exit_code,
            2);  // --seed is mandatory
  EXPECT_EQ(run_cli("simulate --spec /nonexistent.json --out " + out_dir.string() +
                    " --seed 1").exit_code,
            3);

  const CliResult r = run_cli("simulate --spec " + spec.string() + " --out " +
                              out_dir.string() + " --seed 7");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("T=40"), std::string::npos);
  EXPECT_TRUE(fs::exists(out_dir / "replicates.csv"));
  EXPECT_TRUE(fs::exists(out_dir / "aggregates.csv"));
}

TEST(CliSimulateTest, ThreadCountDoesNotChangeBytes) {
  const fs::path spec = test_dir() / "det_spec.json";
  {
    std::ofstream out(spec);
    out << R"({
      "population": {"generator": "beta", "N": 400, "a": 2, "b": 10, "seed": 5},
      "statistic": "mean", "mechanism": "global-laplace",
      "epsilon": 0.5, "delta": 0,
      "sample_sizes": [40, 100], "replicates": 60
    })";
  }
  const fs::path d1 = test_dir() / "det_t1";
  const fs::path d2 = test_dir() / "det_t2";
  ASSERT_EQ(run_cli("simulate --spec " + spec.string() + " --out " + d1.string() +
                    " --seed 11 --threads 1").exit_code,
            0);
  ASSERT_EQ(run_cli("simulate --spec " + spec.string() + " --out " + d2.string() +
                    " --seed 11 --threads 2").exit_code,
            0);
  EXPECT_EQ(read_file(d1 / "replicates.csv"), read_file(d2 / "replicates.csv"));
  EXPECT_EQ(read_file(d1 / "aggregates.csv"), read_file(d2 / "aggregates.csv"));
}

TEST(CliSimulateTest, AggregatesRecomputableFromReplicatesCsv) {
  // Independent one-pass recomputation of the MSE column from the raw rows.
  const fs::path d1 = test_dir() / "det_t1";
  const std::string reps = read_file(d1 / "replicates.csv");
  ASSERT_FALSE(reps.empty());

  double true_value = 0.0;
  std::map<long long, std::pair<double, long long>> se_by_n;
  std::istringstream in(reps);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# population", 0) == 0) {
      const auto pos = line.find("true=");
      true_value = std::stod(line.substr(pos + 5));
      continue;
    }
    if (line.empty() || line[0] == '#' || line[0] == 'r') continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    ASSERT_EQ(fields.size(), 10u);
    const long long n = std::stoll(fields[1]);
    const double noisy = std::stod(fields[7]);
    se_by_n[n].first += (noisy - true_value) * (noisy - true_value);
    se_by_n[n].second += 1;
  }

  const std::string aggs = read_file(d1 / "aggregates.csv");
  std::istringstream agg_in(aggs);
  int checked = 0;
  while (std::getline(agg_in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    const long long n = std::stoll(fields[0]);
    const double mse = std::stod(fields[4]);
    const auto& [se, count] = se_by_n.at(n);
    EXPECT_NEAR(mse, se / static_cast<double>(count), 1e-9 * std::abs(mse));
    ++checked;
  }
  EXPECT_EQ(checked, 3);  // population group + two sizes
}

TEST(CliCriticalEpsTest, JsonAndCsvModes) {
  const CliResult j = run_cli("critical-eps --rate 0.5");
  ASSERT_EQ(j.exit_code, 0);
  const json record = json::parse(j.out);
  EXPECT_DOUBLE_EQ(record["eps_n"].get<double>(),
                   record["eps"].get<double>() / 0.5);
  EXPECT_LT(record["noise_ratio_residual"].get<double>(), 1e-10);

  const CliResult c = run_cli("critical-eps --rates 0.1 0.5 0.9");
  ASSERT_EQ(c.exit_code, 0);
  EXPECT_NE(c.out.find("rate,eps,eps_n"), std::string::npos);
  int rows = 0;
  std::istringstream in(c.out);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#' && line[0] != 'r') ++rows;
  }
  EXPECT_EQ(rows, 3);
}

TEST(CliBoundsTest, RecordFields) {
  const CliResult r =
      run_cli("bounds --eps 3 --rate 0.1677 --R 1 --N 10001 --S2 0.01");
  ASSERT_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["q_bound"].get<double>(), 0.6, 2e-3);
  EXPECT_TRUE(j.contains("no_gain_threshold"));
  EXPECT_TRUE(j.contains("mean_variance_sample"));
  EXPECT_LE(j["noise_ratio_mean"].get<double>(), 1.0);
}

TEST(CliVerifyTest, PassesAndReportsViolationScale) {
  const CliResult r = run_cli("verify --N 5 --n 2 --pairs 5 --omegas 301 --seed 9");
  ASSERT_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_LE(j["max_violation"].get<double>(), 1e-12);
}

TEST(CliVerifyTest, GuardExitsFour) {
  EXPECT_EQ(run_cli("verify --N 40 --n 20 --pairs 1 --omegas 3").exit_code, 4);
}

}  // namespace
