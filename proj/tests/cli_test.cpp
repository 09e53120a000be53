// Copyright 2026 The gofl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests of the gofl binary: each test spawns the real
// executable (path injected as GOFL_CLI_PATH at compile time) through
// the shell, captures stdout+stderr, and checks the documented output
// keys and the 0/1/2 exit-status contract.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gofl/io.hpp"
#include "gofl/local_levels.hpp"
#include "gofl/test_families.hpp"
#include "gtest/gtest.h"

namespace gofl {
namespace {

struct CommandResult {
  int status = -1;
  std::string output;  // stdout and stderr interleaved
};

// Runs `<env_prefix> "<cli>" <args> 2>&1` through the shell.
CommandResult RunCli(const std::string& args,
                     const std::string& env_prefix = "") {
  std::string command;
  if (!env_prefix.empty()) command += env_prefix + " ";
  command += std::string("\"") + GOFL_CLI_PATH + "\" " + args + " 2>&1";
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    ADD_FAILURE() << "popen failed for: " << command;
    return result;
  }
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

// Parses the key=value lines the CLI prints for scalar results.
std::map<std::string, std::string> ParseKv(const std::string& output) {
  std::map<std::string, std::string> kv;
  std::istringstream stream(output);
  std::string line;
  while (std::getline(stream, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

double AsDouble(const std::map<std::string, std::string>& kv,
                const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    ADD_FAILURE() << "missing key '" << key << "'";
    return 0.0;
  }
  return std::strtod(it->second.c_str(), nullptr);
}

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "/" + name;
}

TEST(CliCalibrate, EllMatchesFrozenValueAndEchoesRequest) {
  const CommandResult result =
      RunCli("calibrate --family ell --n 100 --alpha 0.05");
  ASSERT_EQ(result.status, 0) << result.output;
  const auto kv = ParseKv(result.output);
  EXPECT_EQ(kv.at("family"), "ell_one");
  EXPECT_EQ(kv.at("n"), "100");
  EXPECT_NEAR(AsDouble(kv, "parameter"), 0.0024609353840351106, 1e-12);
  EXPECT_NEAR(AsDouble(kv, "achieved_level"), 0.05, 1e-6);
}

TEST(CliCalibrate, EmitWritesLoadableDefinitionMatchingParameter) {
  const std::string path = TempPath("gofl_cli_hc50.csv");
  const CommandResult result = RunCli(
      "calibrate --family hc --n 50 --alpha 0.05 --sided 1 --emit " + path);
  ASSERT_EQ(result.status, 0) << result.output;
  const auto kv = ParseKv(result.output);
  EXPECT_EQ(kv.at("emitted"), path);
  const double d = AsDouble(kv, "parameter");

  const TestDefinition loaded = read_test_definition_file(path);
  EXPECT_EQ(loaded.family, Family::kHcOne);
  EXPECT_EQ(loaded.n, 50);
  const TestDefinition rebuilt = make_test_definition(Family::kHcOne, 50, d);
  ASSERT_EQ(loaded.lower.size(), rebuilt.lower.size());
  for (std::size_t k = 0; k < loaded.lower.size(); ++k) {
    EXPECT_EQ(loaded.lower[k], rebuilt.lower[k]) << "rank " << k + 1;
  }
  std::remove(path.c_str());
}

TEST(CliLocalLevels, ProfileMatchesInProcessComputation) {
  const std::string testdef = TempPath("gofl_cli_hc2_30.csv");
  write_test_definition_file(testdef,
                             make_test_definition(Family::kHcTwo, 30, 5.0));
  const CommandResult result = RunCli("local-levels --from " + testdef);
  ASSERT_EQ(result.status, 0) << result.output;

  std::istringstream stream(result.output);
  const LocalLevelProfile parsed =
      read_local_level_profile_csv(stream, "cli-stdout");
  const LocalLevelProfile direct =
      local_levels_two_sided(make_test_definition(Family::kHcTwo, 30, 5.0));
  ASSERT_EQ(parsed.n, 30);
  for (std::size_t k = 0; k < 30; ++k) {
    EXPECT_EQ(parsed.one_sided[k], direct.one_sided[k]) << "rank " << k + 1;
    EXPECT_EQ(parsed.two_sided[k], direct.two_sided[k]) << "rank " << k + 1;
  }
  std::remove(testdef.c_str());
}

TEST(CliCurves, RowsSatisfyInverseIdentity) {
  const CommandResult result = RunCli("curves --n 1000 --d 10 --grid 1000");
  ASSERT_EQ(result.status, 0);
  std::istringstream stream(result.output);
  std::string line;
  ASSERT_TRUE(std::getline(stream, line));
  ASSERT_EQ(line, "x,rho,rho_tilde,r,r_tilde");
  int rows = 0;
  while (std::getline(stream, line)) {
    ++rows;
    std::istringstream row(line);
    std::string field;
    std::vector<double> fields;
    while (std::getline(row, field, ',')) {
      fields.push_back(std::strtod(field.c_str(), nullptr));
    }
    ASSERT_EQ(fields.size(), 5u) << line;
    const double x = fields[0];
    const double rho = fields[1];
    EXPECT_NEAR(curve_eval(CurveKind::kR, rho, 1000, 10.0), x, 1e-10)
        << "row " << rows;
  }
  EXPECT_EQ(rows, 1000);
}

TEST(CliTest, AcceptsUniformQuantilesUnderCalibratedTest) {
  const std::string testdef = TempPath("gofl_cli_accept_def.csv");
  const std::string data = TempPath("gofl_cli_accept_data.txt");
  write_test_definition_file(
      testdef, make_test_definition(Family::kHcOne, 100, 4.7243614793));
  {
    std::ofstream sample(data);
    for (int i = 1; i <= 100; ++i) {
      sample << format_double((i - 0.5) / 100.0) << "\n";
    }
  }
  const CommandResult result =
      RunCli("test --from " + testdef + " --data " + data);
  ASSERT_EQ(result.status, 0) << result.output;
  const auto kv = ParseKv(result.output);
  EXPECT_EQ(kv.at("decision"), "accept");
  EXPECT_EQ(kv.at("first_violation"), "none");
  EXPECT_EQ(kv.at("n"), "100");
  std::remove(testdef.c_str());
  std::remove(data.c_str());
}

TEST(CliTest, RejectsSpikedSampleAndReportsFirstViolation) {
  const std::string testdef = TempPath("gofl_cli_reject_def.csv");
  const std::string data = TempPath("gofl_cli_reject_data.txt");
  write_test_definition_file(
      testdef, make_test_definition(Family::kHcOne, 100, 4.7243614793));
  {
    std::ofstream sample(data);
    sample << "1e-9\n";  // far below the rank-1 bound
    for (int i = 2; i <= 100; ++i) {
      sample << format_double((i - 0.5) / 100.0) << "\n";
    }
  }
  const CommandResult result =
      RunCli("test --from " + testdef + " --data " + data);
  ASSERT_EQ(result.status, 0) << result.output;
  const auto kv = ParseKv(result.output);
  EXPECT_EQ(kv.at("decision"), "reject");
  EXPECT_EQ(kv.at("first_violation"), "1");
  // The smallest transformed p-value must reflect the spike.
  EXPECT_LT(AsDouble(kv, "m_plus"), 1e-6);
  EXPECT_GT(AsDouble(kv, "hc_plus"), 4.7243614793);
  std::remove(testdef.c_str());
  std::remove(data.c_str());
}

TEST(CliTest, SampleSizeMismatchIsNumericFailure) {
  const std::string testdef = TempPath("gofl_cli_mismatch_def.csv");
  const std::string data = TempPath("gofl_cli_mismatch_data.txt");
  write_test_definition_file(
      testdef, make_test_definition(Family::kHcOne, 10, 3.0));
  {
    std::ofstream sample(data);
    sample << "0.5\n0.6\n";
  }
  const CommandResult result =
      RunCli("test --from " + testdef + " --data " + data);
  EXPECT_EQ(result.status, 1);
  EXPECT_NE(result.output.find("gofl:"), std::string::npos);
  std::remove(testdef.c_str());
  std::remove(data.c_str());
}

TEST(CliMcLevel, SameSeedReproducesIdenticalOutput) {
  const std::string testdef = TempPath("gofl_cli_mc_def.csv");
  write_test_definition_file(
      testdef, make_test_definition(Family::kHcOne, 100, 4.7243614793));
  const std::string args =
      "mc-level --from " + testdef + " --reps 2000 --seed 271828";
  const CommandResult first = RunCli(args);
  const CommandResult second = RunCli(args);
  ASSERT_EQ(first.status, 0) << first.output;
  EXPECT_EQ(first.output, second.output);
  const auto kv = ParseKv(first.output);
  EXPECT_EQ(kv.at("reps"), "2000");
  // 2000 reps of a 0.05-level test: the estimate is near 0.05.
  EXPECT_NEAR(AsDouble(kv, "estimate"), 0.05, 0.03);
  std::remove(testdef.c_str());
}

TEST(CliMcLevel, MissingSeedIsUsageError) {
  const std::string testdef = TempPath("gofl_cli_mc_seedless.csv");
  write_test_definition_file(testdef,
                             make_test_definition(Family::kHcOne, 20, 3.0));
  const CommandResult result =
      RunCli("mc-level --from " + testdef + " --reps 100");
  EXPECT_EQ(result.status, 2);
  EXPECT_NE(result.output.find("--seed"), std::string::npos);
  std::remove(testdef.c_str());
}

TEST(CliApprox, ReportsFrozenRatiosForDeepLeftRank) {
  const CommandResult result =
      RunCli("approx --i 2 --n 1000000 --t 2.9701952490421646");
  ASSERT_EQ(result.status, 0) << result.output;
  const auto kv = ParseKv(result.output);
  EXPECT_EQ(kv.at("regime"), "extreme-left");
  EXPECT_EQ(kv.at("poisson_formula"), "poisson-extreme-left");
  EXPECT_EQ(kv.at("asymptotic_formula"), "level-extreme-left-general");
  EXPECT_NEAR(AsDouble(kv, "poisson_ratio"), 0.92013039479589154, 1e-9);
  EXPECT_NEAR(AsDouble(kv, "asymptotic_ratio"), 0.1346436883566072, 1e-9);
  // The normal form has no extreme-rank branch; the key degrades to n/a.
  EXPECT_NE(kv.at("normal_log_level").find("n/a"), std::string::npos);
}

TEST(CliApprox, RegimeOverrideForcesBranchAndEchoesScale) {
  const CommandResult result = RunCli(
      "approx --i 9995 --n 10000 --t 2.9701952490421646 "
      "--regime edge-right");
  ASSERT_EQ(result.status, 0) << result.output;
  const auto kv = ParseKv(result.output);
  EXPECT_EQ(kv.at("regime"), "edge-right");
  // Derived scale is (n - i)/u with u = log log n.
  const double u = std::log(std::log(10000.0));
  EXPECT_NEAR(AsDouble(kv, "scale"), 5.0 / u, 1e-12);
  EXPECT_EQ(kv.at("asymptotic_formula"), "level-edge-right");
}

TEST(CliExitCodes, UsageErrorsReturnTwo) {
  EXPECT_EQ(RunCli("").status, 2);
  EXPECT_EQ(RunCli("bogus").status, 2);
  EXPECT_EQ(RunCli("calibrate --family warp --n 10 --alpha 0.05").status, 2);
  EXPECT_EQ(RunCli("calibrate --family ks --n 100 --alpha 0.05 --sided 2")
                .status,
            2);
  EXPECT_EQ(RunCli("curves --n 10 --d 2 --grid 5 --bogus 1").status, 2);
  EXPECT_EQ(RunCli("approx --i 1 --n 100 --t 1 --scale 2").status, 2);
  EXPECT_EQ(RunCli("approx --i 1 --n 100 --t 1 --regime warp").status, 2);
  EXPECT_EQ(RunCli("calibrate --family ks --n ten --alpha 0.05").status, 2);
}

TEST(CliExitCodes, NumericAndFileFailuresReturnOne) {
  const CommandResult missing = RunCli("local-levels --from /nonexistent.csv");
  EXPECT_EQ(missing.status, 1);
  EXPECT_NE(missing.output.find("cannot open"), std::string::npos);

  // Grid finer than n violates the rho_tilde domain.
  EXPECT_EQ(RunCli("curves --n 10 --d 2 --grid 100").status, 1);
}

TEST(CliExitCodes, ExactLimitEnvVarBoundsCalibrateAndIsValidated) {
  const CommandResult bounded = RunCli(
      "calibrate --family ks --n 100 --alpha 0.05", "GOF_EXACT_LIMIT=50");
  EXPECT_EQ(bounded.status, 1);
  EXPECT_NE(bounded.output.find("exceeds the exact-computation limit"),
            std::string::npos);

  const CommandResult garbage = RunCli(
      "calibrate --family ks --n 100 --alpha 0.05", "GOF_EXACT_LIMIT=banana");
  EXPECT_EQ(garbage.status, 2);
  EXPECT_NE(garbage.output.find("GOF_EXACT_LIMIT"), std::string::npos);

  const CommandResult roomy = RunCli(
      "calibrate --family ks --n 100 --alpha 0.05", "GOF_EXACT_LIMIT=200");
  EXPECT_EQ(roomy.status, 0) << roomy.output;
}

}  // namespace
}  // namespace gofl
