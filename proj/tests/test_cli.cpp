// Copyright 2026 The Catlab Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CATLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args, int expected_code = 0) {
  const auto r = run(args);
  EXPECT_EQ(r.code, expected_code) << args;
  return nlohmann::json::parse(r.out);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("catlab_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, CatalyzeClusterGhzWritesPassingReport) {
  const auto path = temp_file("r.json");
  const auto r = run("catalyze --model cluster-1d --catalyst ghz --n 8 --seed 7 --out " + path.string());
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(slurp(path));
  std::filesystem::remove(path);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "catalyze");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["config"]["seed"], 7);
  EXPECT_EQ(j["results"]["depth"], 6);
  EXPECT_EQ(j["results"]["gates_failing_audit"], 0);
  EXPECT_TRUE(j["results"]["audit_pass"].get<bool>());
  EXPECT_FALSE(j.contains("wall_ms"));
}

TEST(Cli, InvariantHasMinusOneEntry) {
  const auto j = run_json("invariant --model cluster-1d --n 12");
  EXPECT_FALSE(j["results"]["trivial"].get<bool>());
  bool found = false;
  for (const auto& row : j["results"]["table"])
    if (row["g"] == "(1,0)" && row["h"] == "(0,1)") {
      found = true;
      EXPECT_EQ(row["re"].get<double>(), -1.0);
    }
  EXPECT_TRUE(found);
}

TEST(Cli, InvariantCsv) {
  const auto r = run("invariant --model cluster-1d --n 12 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "g,h,i_power,im,re");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 17);
}

TEST(Cli, MeasurePrepThousandRuns) {
  const auto j = run_json("measure-prep --n 8 --runs 1000 --seed 1");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["results"]["failures"], 0);
}

TEST(Cli, SameSeedSameBytesExceptTimestamp) {
  for (const std::string args : {"measure-prep --n 8 --runs 200 --seed 3", "catalyze --catalyst swssb --n 8",
                                 "localization --model cluster-1d --n 12 --catalyst swssb"}) {
    auto a = run_json(args);
    auto b = run_json(args);
    a.erase("timestamp");
    b.erase("timestamp");
    EXPECT_EQ(a.dump(), b.dump()) << args;
  }
  auto one = run_json("measure-prep --n 8 --runs 64 --seed 9 --jobs 1");
  auto three = run_json("measure-prep --n 8 --runs 64 --seed 9 --jobs 3");
  EXPECT_EQ(one["results"].dump(), three["results"].dump());
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("catalyze --model nope --catalyst ghz").code, 2);
  EXPECT_EQ(run("catalyze --model cluster-1d --catalyst nope").code, 2);
  EXPECT_EQ(run("catalyze --model cluster-1d").code, 2);
  EXPECT_EQ(run("catalyze --model lsm-dimer --n 7 --catalyst ghz").code, 2);
  EXPECT_EQ(run("catalyze --model cluster-1d --catalyst ghz --format csv").code, 2);
  EXPECT_EQ(run("catalyze --model cluster-1d --catalyst swssb --engine dense").code, 2);
  EXPECT_EQ(run("pipeline --model cluster-1d --catalyst gapless").code, 2);
  EXPECT_EQ(run("invariant --model cluster-1d --n 12 --region-a 0 6 --region-b 1 6").code, 2);
  EXPECT_EQ(run("invariant --model lieb-2d").code, 2);
  EXPECT_EQ(run("measure-prep --n 7 --runs 10").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
}

TEST(Cli, CheckFailureExitsOneWithReport) {
  const auto j = run_json("catalyze --model cluster-1d --n 8 --catalyst trivial", 1);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_FALSE(j["results"]["state_match"].get<bool>());
  EXPECT_LT(j["results"]["overlap"].get<double>(), 1.0);
}

TEST(Cli, PipelineReportsDepth) {
  const auto j = run_json("pipeline --model cluster-1d --catalyst ghz --n 8");
  EXPECT_EQ(j["results"]["total_depth"], 9);
  const auto l = run_json("pipeline --model lsm-dimer --catalyst long-range-bell --n 12");
  EXPECT_EQ(l["results"]["total_depth"], 3);
}

TEST(Cli, LocalizationSweep) {
  const auto j = run_json("localization --model cluster-1d --n 12 --catalyst ghz --jobs 2");
  EXPECT_TRUE(j["results"]["witnesses_verified"].get<bool>());
  EXPECT_GE(j["results"]["obstructed_generators"].size(), 1u);
  const auto t = run_json("localization --model cluster-1d --n 12 --generator 0 --start 2 --length 6");
  ASSERT_EQ(t["results"]["table"].size(), 1u);
  EXPECT_TRUE(t["results"]["table"][0]["strong"].get<bool>());
}

TEST(Cli, CorrelatorsSwssb) {
  const auto j = run_json("correlators --model cluster-1d --n 8 --catalyst swssb");
  for (const auto& row : j["results"]["table"]) {
    EXPECT_EQ(row["expectation"].get<double>(), 0.0);
    const std::string label = row["label"];
    const int i = std::stoi(label.substr(1)), k = std::stoi(label.substr(label.find(' ') + 2));
    if ((k - i) % 2 == 0) {
      EXPECT_EQ(row["fidelity"].get<double>(), 1.0) << label;
      EXPECT_EQ(row["renyi2"].get<double>(), 1.0) << label;
    }
  }
  const auto csv = run("correlators --model lieb-2d --lx 2 --format csv");
  EXPECT_EQ(csv.code, 0);
  EXPECT_NE(csv.out.find("dual-loop"), std::string::npos);
}

TEST(Cli, CohomologyGroups) {
  const auto j = run_json("cohomology --group 2,2 --degree 2");
  EXPECT_EQ(j["results"]["factors"], nlohmann::json::array({2}));
  const auto z = run_json("cohomology --group 2 --degree 2 --modulus 2");
  EXPECT_EQ(z["results"]["order"], 2);
}

TEST(Cli, SelftestSubset) {
  const auto j = run_json("selftest --only 3,7");
  ASSERT_EQ(j["results"]["criteria"].size(), 2u);
  EXPECT_TRUE(j["pass"].get<bool>());
}
