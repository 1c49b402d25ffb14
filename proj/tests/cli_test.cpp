// Copyright 2026 The yieldopt Authors
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

// Runs the built command-line tool and checks exit codes and outputs.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Output {
  int status = -1;
  std::string out;
};

Output run(const std::string& args) {
  const std::string command = std::string(YIELDOPT_CLI) + " " + args + " 2>/dev/null";
  Output result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

const char* kBinary = R"('{"schema": 1, "support": [0, 0.5], "cum_mass": [0.5, 1]}')";

TEST(CliTest, ThresholdsReportsClosedFormNeighbourhood) {
  const Output r = run(std::string("thresholds --dist ") + kBinary + " --penalty 1 --supply 2");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["thresholds"][0].get<double>(), 0.306853, 2.0 / 200);
  EXPECT_NEAR(j["closed_form_threshold"].get<double>(), 0.306853, 1e-6);
  EXPECT_NEAR(j["objective_per_unit_demand"].get<double>(), 0.142236, 1e-4);
  EXPECT_EQ(j["schema"], 1);
}

TEST(CliTest, UsageAndValidationErrorsExitTwo) {
  EXPECT_EQ(run("bogus").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("thresholds --penalty 1 --supply 2").status, 2);
  EXPECT_EQ(run(std::string("thresholds --dist ") + kBinary + " --penalty 0.4 --supply 2").status,
            2);
  EXPECT_EQ(run("ratio --supply 2 --q 0.5 --r 1 --penalty 1").status, 2);
  EXPECT_EQ(run("repro no-such-experiment").status, 2);
}

TEST(CliTest, SimulateRequiresSeedAndReplays) {
  const std::string inst =
      R"('{"demands": [2, 2], "groups": [{"count": 4, "eligible": [0, 1]}, {"count": 4, "eligible": [1]}]}')";
  const std::string base = "simulate --instance " + inst + " --dist " + kBinary + " --penalty 1";
  EXPECT_EQ(run(base).status, 2);
  const Output a = run(base + " --seed 5 --seeds 3");
  const Output b = run(base + " --seed 5 --seeds 3");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("seed,reward,exchange_revenue,penalty_paid,fill_rate\n", 0), 0u);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
  EXPECT_EQ(a.out.find('\r'), std::string::npos);
}

TEST(CliTest, GenOracleRatioWorstcaseMatching) {
  const Output gen = run("gen --kind triangular --m 3 --n 2 --supply 2 --seed 1");
  ASSERT_EQ(gen.status, 0);
  EXPECT_EQ(nlohmann::json::parse(gen.out)["groups"].size(), 3u);
  EXPECT_EQ(run("gen --kind triangular --m 3 --n 3 --supply 1.5 --seed 1").status, 2);

  const Output opt = run(std::string("oracle --mode opt-formula --dist ") + kBinary +
                         " --supply 2 --demand 1");
  ASSERT_EQ(opt.status, 0);
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(opt.out)["value"].get<double>(), 0.5);

  const Output ratio = run("ratio --supply 2 --q 0.5 --r 0.5 --penalty 1");
  ASSERT_EQ(ratio.status, 0);
  EXPECT_NEAR(nlohmann::json::parse(ratio.out)["ratio"].get<double>(), 0.28449, 5e-5);
  const Output undefined = run("ratio --supply 2 --q 0.5 --r 0 --penalty 1");
  ASSERT_EQ(undefined.status, 0);
  EXPECT_TRUE(nlohmann::json::parse(undefined.out)["ratio"].is_null());

  const Output wc = run("worstcase --mean 0.3 --penalty 1 --supply 2");
  ASSERT_EQ(wc.status, 0);
  EXPECT_EQ(nlohmann::json::parse(wc.out)["candidates"].size(), 2u);

  const Output m = run("matching --m 10 --n 1 --supply 2 --trials 4 --seed 3");
  ASSERT_EQ(m.status, 0);
  EXPECT_EQ(m.out.rfind("trial,weight,ratio\n", 0), 0u);
  EXPECT_EQ(run("matching --m 10 --trials 4").status, 2);
}

TEST(CliTest, ReproRunsNamedExperiment) {
  const Output r = run("repro supply-factor");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("PASS", 0), 0u);
}

}  // namespace
