// Copyright 2026 The bandit_lab Authors. All rights reserved.
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


#include "bandit_lab/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace bandit_lab::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bandit_lab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path WriteConfig(const std::string& body) {
    const auto p = dir_ / "config.json";
    std::ofstream(p) << body;
    return p;
  }

  fs::path dir_;
};

constexpr const char* kSmallConfig = R"({"name":"tiny","N":10,"K":3,"gamma":5,"T":20,"replications":4,
  "reward_model":{"kind":"stationary"},
  "strategies":[{"kind":"epsilon-greedy"},{"kind":"ucb1"},{"kind":"thompson"}]})";

TEST_F(CliTest, ListStrategies) {
  const auto r = Invoke({"list-strategies"});
  EXPECT_EQ(r.code, kExitOk);
  for (const char* kind : {"epsilon-greedy", "ag1", "ucb1", "thompson"}) {
    EXPECT_NE(("\n" + r.out).find(std::string("\n") + kind + " "), std::string::npos) << kind;
  }
  EXPECT_NE(r.out.find("epsilon=0.1"), std::string::npos);
  EXPECT_NE(r.out.find("window_r=3"), std::string::npos);
  EXPECT_NE(r.out.find("restart_period"), std::string::npos);
}

TEST_F(CliTest, RunTwiceIsByteIdentical) {
  const auto cfg = WriteConfig(kSmallConfig);
  const auto a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(Invoke({"run", "--config", cfg.string(), "--seed", "42", "--out", a.string()}).code, kExitOk);
  ASSERT_EQ(Invoke({"run", "--config", cfg.string(), "--seed", "42", "--out", b.string()}).code, kExitOk);
  EXPECT_EQ(Slurp(a / "tiny.csv"), Slurp(b / "tiny.csv"));
  EXPECT_FALSE(Slurp(a / "tiny.csv").empty());
  EXPECT_TRUE(fs::exists(a / "tiny.summary.csv"));
  EXPECT_TRUE(fs::exists(a / "tiny.summary.txt"));
}

TEST_F(CliTest, OverridesApply) {
  const auto cfg = WriteConfig(kSmallConfig);
  const auto out = dir_ / "o";
  const auto r = Invoke({"run", "--config", cfg.string(), "--reps", "2", "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto data = read_csv_file(out / "tiny.csv");
  EXPECT_EQ(data.records.size(), 3u * 2u * 20u);
}

TEST_F(CliTest, MissingConfigExitsTwoAndNamesPath) {
  const auto missing = (dir_ / "nope.json").string();
  const auto r = Invoke({"run", "--config", missing});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find(missing), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, InvalidConfigExitsTwo) {
  const auto cfg = WriteConfig(R"({"name":"x","N":1,"reward_model":{"kind":"stationary"}})");
  const auto r = Invoke({"run", "--config", cfg.string(), "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("'N'"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "o"));
}

TEST_F(CliTest, UnwritableOutputExitsThree) {
  const auto cfg = WriteConfig(kSmallConfig);
  const auto blocker = dir_ / "file";
  std::ofstream(blocker) << "x";
  const auto r = Invoke({"run", "--config", cfg.string(), "--out", (blocker / "sub").string()});
  EXPECT_EQ(r.code, kExitRuntime);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Invoke({}).code, kExitConfig);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(Invoke({"run"}).code, kExitConfig);
  EXPECT_EQ(Invoke({"summarize"}).code, kExitConfig);
}

TEST_F(CliTest, SummarizeMatchesRunTable) {
  const auto cfg = WriteConfig(kSmallConfig);
  const auto out = dir_ / "o";
  const auto run = Invoke({"run", "--config", cfg.string(), "--out", out.string()});
  ASSERT_EQ(run.code, kExitOk);
  const auto summ = Invoke({"summarize", "--input", (out / "tiny.csv").string()});
  ASSERT_EQ(summ.code, kExitOk) << summ.err;
  EXPECT_EQ(summ.out, run.out);
  EXPECT_EQ(Slurp(out / "tiny.summary.txt"), run.out);
}

TEST_F(CliTest, SummarizeIgnoresRowOrder) {
  const auto cfg = WriteConfig(kSmallConfig);
  const auto out = dir_ / "o";
  const auto run = Invoke({"run", "--config", cfg.string(), "--out", out.string()});
  ASSERT_EQ(run.code, kExitOk);
  std::istringstream csv(Slurp(out / "tiny.csv"));
  std::string header, line;
  std::getline(csv, header);
  std::vector<std::string> rows;
  while (std::getline(csv, line)) rows.push_back(line);
  std::reverse(rows.begin(), rows.end());
  {
    std::ofstream shuffled(dir_ / "rev.csv", std::ios::binary);
    shuffled << header << '\n';
    for (const auto& r : rows) shuffled << r << '\n';
  }
  const auto summ = Invoke({"summarize", "--input", (dir_ / "rev.csv").string()});
  ASSERT_EQ(summ.code, kExitOk) << summ.err;
  EXPECT_EQ(summ.out, run.out);
}

TEST_F(CliTest, SummarizeRejectsMissingColumn) {
  {
    std::ofstream bad(dir_ / "bad.csv");
    bad << "run_id,strategy,replication,epoch\n";
  }
  const auto r = Invoke({"summarize", "--input", (dir_ / "bad.csv").string()});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("optimal_arm"), std::string::npos);
}

TEST_F(CliTest, OutDirectoryFromEnvironment) {
  const auto cfg = WriteConfig(kSmallConfig);
  const auto env_out = dir_ / "from_env";
  ::setenv("BANDIT_LAB_OUT", env_out.c_str(), 1);
  const auto r = Invoke({"run", "--config", cfg.string()});
  ::unsetenv("BANDIT_LAB_OUT");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(env_out / "tiny.csv"));
}

TEST_F(CliTest, NonStationaryTwoArmOrdering) {
  const auto out = dir_ / "o";
  const auto r = Invoke({"run", "--config", std::string(BANDIT_LAB_CONFIG_DIR) + "/nonstat_k2.json", "--reps",
                         "20", "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ag1 = r.out.find("\nag1 "), eps = r.out.find("\nepsilon-greedy* ");
  ASSERT_NE(ag1, std::string::npos);
  ASSERT_NE(eps, std::string::npos);
  EXPECT_LT(ag1, eps);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = BANDIT_LAB_CLI;
  EXPECT_EQ(std::system((bin + " list-strategies > /dev/null").c_str()), 0);
  const int status = std::system((bin + " run --config /nonexistent/x.json 2> /dev/null").c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitConfig);
}

}  // namespace
}  // namespace bandit_lab::cli
