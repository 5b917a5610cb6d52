#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(UCSIZE_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(UCS_SAMPLES_DIR) + "/" + name; }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ucsize_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, FmValues) {
  for (auto [m, f] : {std::pair{3, 3}, {8, 12}, {1, 0}, {12, 24}}) {
    const auto r = run("fm " + std::to_string(m) + " --json");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["f"], f) << m;
  }
  const auto text = run("fm 6");
  EXPECT_NE(text.out.find("f(m) = 9"), std::string::npos);
}

TEST(Cli, FmEmitFamily) {
  const auto path = temp_file("fm.txt");
  ASSERT_EQ(run("fm 12 --emit-family " + path.string()).code, 0);
  EXPECT_EQ(slurp(path), slurp(sample("extremal_12.txt")));
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("fm 0").code, 2);
  EXPECT_EQ(run("fm").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify --mode sideways").code, 2);
}

TEST(Cli, Colex) {
  const auto j = nlohmann::json::parse(run("colex 9 --list --json").out);
  EXPECT_EQ(j["total_size"], 13);
  EXPECT_EQ(j["sets"].size(), 9u);
  EXPECT_EQ(j["sets"][3], "{1,2}");
  const auto b = nlohmann::json::parse(run("colex 6 --json").out);
  EXPECT_EQ(b["bound"], "7");
  EXPECT_EQ(b["tight"], true);
}

TEST(Cli, AnalyzeRootedSample) {
  const auto r = run("analyze " + sample("p2_minus_empty.txt"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["simply_rooted"], true);
  EXPECT_EQ(j["union_closed"], true);
  EXPECT_EQ(j["simply_rooted_analysis"]["bad"], 2);
  EXPECT_EQ(j["simply_rooted_analysis"]["good"], 1);
  for (const auto& row : j["simply_rooted_analysis"]["inequalities"]) EXPECT_TRUE(row["holds"].get<bool>());
}

TEST(Cli, AnalyzeEmptySet) {
  const auto j = nlohmann::json::parse(run("analyze " + sample("empty_set.txt")).out);
  EXPECT_EQ(j["union_closed"], true);
  EXPECT_EQ(j["simply_rooted"], true);
}

TEST(Cli, AnalyzeParseError) {
  const auto r = run("analyze " + sample("malformed_unsorted.txt"), true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("unsorted members, line 3"), std::string::npos);
  EXPECT_EQ(run("analyze /nonexistent/file").code, 2);
}

TEST(Cli, AnalyzeMaxRootedCounterexample) {
  const auto j = nlohmann::json::parse(run("analyze " + sample("max_rooted_counterexample.txt")).out);
  EXPECT_EQ(j["simply_rooted"], true);
  EXPECT_EQ(j["size"], 7);
  EXPECT_EQ(j["total_size"], 14);
  EXPECT_EQ(j["colex_total_size"], 9);
  EXPECT_EQ(j["simply_rooted_analysis"]["max_rooted"], 4);
}

TEST(Cli, AnalyzeWithPartition) {
  const auto j = nlohmann::json::parse(run("analyze " + sample("p2_minus_empty.txt") + " --partition {1}").out);
  EXPECT_EQ(j["simply_rooted_analysis"]["partition"]["S"], "{1}");
  EXPECT_EQ(j["simply_rooted_analysis"]["partition"]["T"], "{2}");
}

TEST(Cli, VerifyExhaustive) {
  const auto r = run("verify --n 3 --mode exhaustive --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["families_simply_rooted"], 122);
}

TEST(Cli, VerifySingleCheck) {
  const auto j = nlohmann::json::parse(run("verify --checks lemma_Y_ge_Z --n 4 --json").out);
  ASSERT_EQ(j["checks"].size(), 1u);
  EXPECT_EQ(j["checks"][0]["id"], "lemma_Y_ge_Z");
  EXPECT_EQ(j["checks"][0]["status"], "pass");
  EXPECT_EQ(run("verify --checks nope --n 2").code, 2);
}

TEST(Cli, VerifyReproducible) {
  const auto a = temp_file("a.json");
  const auto b = temp_file("b.json");
  ASSERT_EQ(run("verify --n 5 --mode random --samples 2000 --seed 7 --report " + a.string()).code, 0);
  ASSERT_EQ(run("verify --n 5 --mode random --samples 2000 --seed 7 --parallel 4 --report " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, VerifyPrintsDefaultSeed) {
  const auto r = run("verify --n 4 --mode random --samples 10 --checks rooted_bound", true);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("seed ", 0), 0u);
}

TEST(Cli, VerifyCapacity) {
  const auto r = run("verify --n 5 --mode exhaustive --json");
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  bool skipped = false;
  for (const auto& c : j["checks"]) skipped = skipped || c["status"] == "skipped";
  EXPECT_TRUE(skipped);
}

TEST(Cli, Search) {
  auto j = nlohmann::json::parse(run("search --n 2 --m 3 --json").out);
  EXPECT_EQ(j["min_total"], 3);
  EXPECT_EQ(j["classes"], 1);
  j = nlohmann::json::parse(run("search --n 3 --m 8 --json").out);
  EXPECT_EQ(j["min_total"], 12);
  EXPECT_EQ(j["classes"], 1);
  j = nlohmann::json::parse(run("search --n 4 --m 12 --json").out);
  EXPECT_EQ(j["min_total"], 24);
  EXPECT_EQ(j["f"], 24);
  EXPECT_EQ(run("search --n 5 --m 20").code, 2);
}

TEST(Cli, Gen) {
  const auto r = run("gen --n 2 --kind union_closed");
  ASSERT_EQ(r.code, 0);
  std::size_t headers = 0;
  for (std::size_t p = r.out.find("n=2"); p != std::string::npos; p = r.out.find("n=2", p + 1)) ++headers;
  EXPECT_EQ(headers, 14u);
  EXPECT_EQ(run("gen --n 5").code, 3);
  const auto a = run("gen --n 6 --mode random --samples 5 --seed 3 --kind simply_rooted");
  const auto b = run("gen --n 6 --mode random --samples 5 --seed 3 --kind simply_rooted");
  EXPECT_EQ(a.out, b.out);
}
