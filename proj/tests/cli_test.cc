// Copyright 2026 The CoordLearn Authors
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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "coordlearn/kbformat.h"

namespace coordlearn {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;  // stdout and stderr
};

Result Cli(const std::string& args) {
  const std::string cmd = std::string(COORDLEARN_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path Source(std::string_view rel) { return fs::path(COORDLEARN_SOURCE_DIR) / rel; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("coordlearn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(Cli("").code, 1);
  EXPECT_EQ(Cli("frobnicate").code, 1);
  EXPECT_EQ(Cli("run --out x").code, 1);
  EXPECT_EQ(Cli("bos --episodes ten").code, 1);
  EXPECT_EQ(Cli("--help").code, 0);
}

TEST_F(CliTest, DataErrorsExitTwo) {
  const auto missing = Cli("run --config " + (dir_ / "nope.conf").string() + " --out " + dir_.string());
  EXPECT_EQ(missing.code, 2);
  WriteTextFile(dir_ / "bad.conf", "fixture = birthplace\nepisdoes = 3\n");
  const auto bad = Cli("run --config " + (dir_ / "bad.conf").string() + " --out " + dir_.string());
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("episdoes"), std::string::npos) << bad.out;
  WriteTextFile(dir_ / "kb.lkb", "(isa A B)\n(isa A\n");
  const auto parse = Cli("evaluate --kb " + (dir_ / "kb.lkb").string());
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.out.find("kb.lkb:2"), std::string::npos) << parse.out;
}

TEST_F(CliTest, EvaluateEmptyKb) {
  WriteTextFile(dir_ / "empty.lkb", "");
  const auto r = Cli("evaluate --kb " + (dir_ / "empty.lkb").string() + " --axioms " +
                     Source("fixtures/birthplace/axioms.lkb").string() + " --templates " +
                     Source("fixtures/birthplace/templates.lkb").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("answered 0"), std::string::npos) << r.out;
}

TEST_F(CliTest, EvaluateFullFixture) {
  const auto r = Cli("evaluate --kb " + Source("fixtures/birthplace/kb.lkb").string() + " --axioms " +
                     Source("fixtures/birthplace/axioms.lkb").string() + " --templates " +
                     Source("fixtures/birthplace/templates.lkb").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("asked 135"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("answered 135"), std::string::npos) << r.out;
}

TEST_F(CliTest, GenerateFixtureMatchesShippedFiles) {
  const auto r = Cli("generate --fixture birthplace --out " + dir_.string());
  ASSERT_EQ(r.code, 0) << r.out;
  for (const char* f : {"kb.lkb", "axioms.lkb", "templates.lkb"})
    EXPECT_EQ(ReadTextFile(dir_ / f), ReadTextFile(Source("fixtures/birthplace") / f)) << f;
}

TEST_F(CliTest, GenerateFromConfig) {
  const auto r = Cli("generate --config " + Source("fixtures/scenarios/employment.gen").string() +
                     " --out " + dir_.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NO_THROW(ParseKbFile(dir_ / "kb.lkb"));
}

TEST_F(CliTest, RunWritesResultsAndReplaysFromResolvedConfig) {
  WriteTextFile(dir_ / "exp.conf",
                "scenario = fixture\nfixture = birthplace\nspecificity_threshold = 100\n"
                "episodes = 40\nbudget = steps:100000\n");
  const auto first = Cli("run --config " + (dir_ / "exp.conf").string() + " --out " + (dir_ / "a").string());
  ASSERT_EQ(first.code, 0) << first.out;
  const std::string summary = ReadTextFile(dir_ / "a/summary.csv");
  EXPECT_EQ(summary.rfind("scenario,algorithm,n_queries,n_answers,improvement_pct\n", 0), 0u);
  EXPECT_NE(summary.find("fixture,baseline,"), std::string::npos);
  EXPECT_NE(summary.find("fixture,coordination,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "a/episodes.jsonl"));

  const auto replay = Cli("run --config " + (dir_ / "a/config.resolved").string() + " --out " +
                          (dir_ / "b").string());
  ASSERT_EQ(replay.code, 0) << replay.out;
  EXPECT_EQ(ReadTextFile(dir_ / "b/summary.csv"), summary);
  EXPECT_EQ(ReadTextFile(dir_ / "b/episodes.jsonl"), ReadTextFile(dir_ / "a/episodes.jsonl"));
}

TEST_F(CliTest, RunSeveralSeeds) {
  WriteTextFile(dir_ / "exp.conf",
                "fixture = birthplace\nspecificity_threshold = 100\nepisodes = 10\nbudget = steps:100000\n");
  const auto r = Cli("run --config " + (dir_ / "exp.conf").string() + " --out " + dir_.string() +
                     " --seed 3 --seed 4 --threads 2");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "seed-3/summary.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "seed-4/summary.csv"));
}

TEST_F(CliTest, BattleOfSexesDemo) {
  const auto r = Cli("bos --episodes 2000 --seeds 20");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto pos = r.out.find("converged ");
  ASSERT_NE(pos, std::string::npos);
  const int converged = std::stoi(r.out.substr(pos + 10));
  EXPECT_GE(converged, 16) << r.out;
  const auto file = Cli("bos --episodes 200 --seeds 2 --payoffs " +
                        Source("fixtures/battle_of_sexes.payoff").string());
  EXPECT_EQ(file.code, 0) << file.out;
}

}  // namespace
}  // namespace coordlearn
