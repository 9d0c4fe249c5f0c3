// Copyright 2026 The Holant Dichotomy Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "holant/io.hpp"

namespace holant {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "holant");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(HOLANT_DATA_DIR) + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, EvalK4ExactOne) {
  const CliRun r = run({"eval", data("k4_exact_one.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "3\n");
}

TEST(Cli, EvalK4AllDistinct) {
  const CliRun r = run({"eval", data("k4_all_distinct.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "6\n");
}

TEST(Cli, ClassifyReferenceTriangleIsHard) {
  const CliRun r = run({"classify", "--domain", "3", data("hard_triangle.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verdict: hard"), std::string::npos);
  EXPECT_NE(r.out.find("verified: yes"), std::string::npos);
}

TEST(Cli, ClassifyZeroIsFormOne) {
  const CliRun r = run({"classify", "--domain", "4", data("zero_d4.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verdict: tractable"), std::string::npos);
  EXPECT_NE(r.out.find("form: d4_form1"), std::string::npos);
}

TEST(Cli, ClassifyJsonCarriesCertificate) {
  const CliRun r = run({"classify", "--domain", "4", "--json", data("rank4_example_d4.json")});
  EXPECT_EQ(r.code, kExitOk);
  const Json j = parse_json(r.out);
  EXPECT_EQ(j.at("verdict"), "hard");
  EXPECT_TRUE(j.at("verified").get<bool>());
  EXPECT_FALSE(j.at("certificate").empty());
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"classify", "--domain", "5", data("zero_d4.json")}).code, kExitUsage);
  EXPECT_EQ(run({"classify", "--domain", "3", data("zero_d4.json")}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "/nonexistent.json"}).code, kExitUsage);
  const CliRun bad = run({"eval", data("malformed_grid.json")});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("malformed_grid.json:7:37"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, VerifyInterp) {
  const CliRun r = run({"verify-interp", "--lemma", "eq3_3", "--seed", "5", "--trials", "5"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("5/5 passed"), std::string::npos);
  EXPECT_EQ(run({"verify-interp", "--lemma", "eq9"}).code, kExitUsage);
}

TEST(Cli, EnumerateWritesReportsAndRemovesCheckpoint) {
  const auto dir = std::filesystem::temp_directory_path() / "holant_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "report.json").string();
  const CliRun a = run({"enumerate", "--limit", "120", "--parallel", "3", "--quiet", "--out", out});
  // A partial run keeps its checkpoint and exits cleanly.
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_TRUE(std::filesystem::exists(out + ".checkpoint.json"));
  const std::string first = slurp(out);

  const CliRun b = run({"enumerate", "--limit", "120", "--parallel", "1", "--quiet", "--out", out, "--no-checkpoint"});
  EXPECT_EQ(b.code, kExitOk);
  EXPECT_EQ(slurp(out), first);
  EXPECT_NE(slurp(dir / "report.csv").find("total,"), std::string::npos);

  std::size_t lines = 0;
  std::ifstream certs(out + ".certs.jsonl");
  for (std::string line; std::getline(certs, line); ++lines) EXPECT_NO_THROW(parse_json(line));
  EXPECT_EQ(lines, 120u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, EnumerateResumeKeepsSidecarConsistent) {
  const auto dir = std::filesystem::temp_directory_path() / "holant_cli_resume";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "report.json").string();
  ASSERT_EQ(run({"enumerate", "--limit", "64", "--quiet", "--out", out}).code, kExitOk);
  const CliRun r = run({"enumerate", "--limit", "100", "--quiet", "--out", out});
  EXPECT_EQ(r.code, kExitOk);
  std::size_t lines = 0;
  std::ifstream certs(out + ".certs.jsonl");
  for (std::string line; std::getline(certs, line);) ++lines;
  EXPECT_EQ(lines, 100u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace holant
