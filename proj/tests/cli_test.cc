// Copyright 2026 The GameLab Authors
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


// Drives the command-line binary end to end.

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

const char kConfig[] = R"({
  "game": {"kind": "bilinear", "A": [[1]]},
  "noise": {"sigma_add": 0.5},
  "players": [
    {"algorithm": "optda_plus", "schedule": {"kind": "adaptive"}},
    {"algorithm": "optda_plus", "schedule": {"kind": "adaptive"}}
  ],
  "horizon": 200,
  "seeds": [4, 5],
  "output_dir": "unused"
})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gamelab_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "config.json") << kConfig;
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Cli(const std::string& args) {
    const std::string cmd = std::string(GAMELAB_CLI_PATH) + " " + args + " >" +
                            (dir_ / "stdout.txt").string() + " 2>" +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string Read(const std::string& name) {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
  std::string Config() { return (dir_ / "config.json").string(); }

  fs::path dir_;
};

TEST_F(CliTest, RunIsByteIdenticalAcrossProcesses) {
  ASSERT_EQ(Cli("run " + Config() + " --output " + (dir_ / "a.csv").string()), 0);
  ASSERT_EQ(Cli("run " + Config() + " --output " + (dir_ / "b.csv").string()), 0);
  const std::string a = Read("a.csv");
  EXPECT_EQ(a.substr(0, a.find('\n')),
            "run,seed,t,player,x,regret_lin,dist_eq,grad_energy_cum,gamma_hat,gamma");
  EXPECT_EQ(a, Read("b.csv"));
  ASSERT_EQ(Cli("run " + Config()), 0);
  EXPECT_EQ(a, Read("stdout.txt"));
}

TEST_F(CliTest, OverridesApply) {
  ASSERT_EQ(Cli("run " + Config() + " --seed-override 9 --horizon-override 3"), 0);
  const std::string out = Read("stdout.txt");
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 7);
  EXPECT_NE(out.find("\n0,9,3,1,"), std::string::npos);
}

TEST_F(CliTest, SuiteWritesFiles) {
  ASSERT_EQ(Cli("suite " + Config() + " --output " + (dir_ / "out").string()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "run_seed4.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "run_seed5.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "aggregate.csv"));
}

TEST_F(CliTest, CheckReportsPass) {
  EXPECT_EQ(Cli("check " + Config() + " adagrad-lemma"), 0);
  EXPECT_EQ(Read("stdout.txt").substr(0, 4), "PASS");
}

TEST_F(CliTest, UsageAndConfigErrorsExitTwo) {
  EXPECT_EQ(Cli("check " + Config() + " unknown-id"), 2);
  EXPECT_EQ(Cli("run /nonexistent.json"), 2);
  EXPECT_EQ(Cli(""), 2);
  EXPECT_EQ(Cli("frobnicate"), 2);
  std::ofstream(dir_ / "bad.json") << R"({"horizon": 1, "seeds": [1], "game": {}, "players": [], "x": 1})";
  EXPECT_EQ(Cli("run " + (dir_ / "bad.json").string()), 2);
}

TEST_F(CliTest, RuntimeFailureExitsOne) {
  std::ofstream(dir_ / "fail.json") << R"({
    "game": {"kind": "bilinear"},
    "noise": {"sigma_add": 100, "bound_abs": 1e-12},
    "players": [{"algorithm": "gda", "schedule": {"kind": "adaptive"}},
                {"algorithm": "gda", "schedule": {"kind": "adaptive"}}],
    "horizon": 5, "seeds": [1]})";
  EXPECT_EQ(Cli("run " + (dir_ / "fail.json").string()), 1);
  EXPECT_NE(Read("stderr.txt").find("round 1"), std::string::npos);
}

}  // namespace
