#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "oracles.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(GRAMCODE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json run_json(const std::string& args) {
  auto r = run(args + " --format json");
  EXPECT_EQ(r.code, 0) << args;
  return nlohmann::json::parse(r.out);
}

bool has_line(const std::string& out, const std::string& line) {
  return ("\n" + out).find("\n" + line + "\n") != std::string::npos;
}

}  // namespace

TEST(Cli, GraphInfo) {
  auto r = run("graph-info --set weight 2 4 1 2 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "nodes: 7"));
  EXPECT_TRUE(has_line(r.out, "arcs: 10"));
  EXPECT_TRUE(has_line(r.out, "eulerian: true"));
  EXPECT_TRUE(has_line(r.out, "lambda: 60"));
  auto j = run_json("graph-info --set full 2 3");
  EXPECT_EQ(j["format_version"], 1);
  EXPECT_EQ(j["command"], "graph-info");
  EXPECT_EQ(j["result"]["lambda"], "12");
}

TEST(Cli, EnumerateMatchesOracle) {
  auto grams = oracle::all_grams(2, 3);
  for (const char* mode : {"E", "F"}) {
    auto j = run_json(std::string("enumerate --set full 2 3 --n 14 --mode ") + mode);
    auto expected = oracle::flow_points(grams, 12, std::string(mode) == "E").size();
    EXPECT_EQ(j["result"]["count"], std::to_string(expected)) << mode;
  }
  auto words = run_json("enumerate --set full 2 2 --n 4 --mode words");
  EXPECT_EQ(words["result"]["count"], "12");
}

TEST(Cli, FitAndReciprocity) {
  auto r = run("fit --set full 2 3 --reciprocity");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1/288"), std::string::npos);
  EXPECT_EQ(run("fit --set full 2 3 --lambda 7").code, 3);
}

TEST(Cli, EncodeThreeGrams) {
  auto j = run_json("encode --set full 2 3 --n 20 --m 2 --message \"0 0 0\"");
  EXPECT_EQ(j["result"]["word"], "00000000000000001100");
  EXPECT_EQ(run("encode --set full 2 3 --n 20 --m 3 --message \"0 0 0\"").code, 2);
}

TEST(Cli, SimulateIsReproducible) {
  const std::string args = "simulate --word 0120312302130 --q 4 --ell 3 --ssyn 2 --t 3 --sseq 2 --seed 42";
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto path = testing::TempDir() + "gramcode_trace.json";
  ASSERT_EQ(run(args + " --trace " + path).code, 0);
  auto first = run_json(args);
  auto replay = run_json("simulate --word 0120312302130 --q 4 --ell 3 --replay " + path);
  EXPECT_EQ(first["result"]["observed"], replay["result"]["observed"]);
}

TEST(Cli, RoundTrips) {
  EXPECT_EQ(run("roundtrip --scheme systematic --set full 2 3 --n 20 --m 2 --message \"0 1 0\"").code, 0);
  EXPECT_EQ(run("roundtrip --scheme rank --q 2 --ell 3 --n 14 --perm \"2 0 1\"").code, 0);
  EXPECT_EQ(run("roundtrip --scheme intersect --n 60 --index 3 --t 1 --seed 5").code, 0);
  // Noise beyond the rank scheme's tolerance yields a mismatch.
  EXPECT_EQ(run("roundtrip --scheme rank --q 2 --ell 3 --n 14 --perm \"0 1 2\" --ssyn 2 --t 3 --sseq 2 --seed 2").code,
            4);
}

TEST(Cli, Tables) {
  auto r = run("tables --id I --row \"c(2,3)\"");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "rows.0.status: PASS"));
  EXPECT_NE(r.out.find("1/288"), std::string::npos);
}

TEST(Cli, CodebookFiles) {
  auto dir = testing::TempDir();
  ASSERT_EQ(run("code-build --N 8 --d 2 --p 13 --alphas \"1 2 3 5 8 10 11 12\" --out " + dir + "h.code").code, 0);
  ASSERT_EQ(run("grc-build --method intersect --set full 2 3 --n 40 --code " + dir + "h.code --verify --out " + dir +
                "book.txt")
                .code,
            0);
  std::ifstream in(dir + "book.txt");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "40 2 3 full 3 intersection");
  std::string first;
  std::getline(in, first);
  auto j = run_json("decode --codebook " + dir + "book.txt --counts \"" + first + "\"");
  EXPECT_EQ(j["result"]["distance"], 0);
}

TEST(Cli, ValidationErrors) {
  EXPECT_EQ(run("simulate --word 0110 --q 2 --ell 2 --t 1").code, 2);
  EXPECT_EQ(run("graph-info --set full 1 2").code, 2);
  EXPECT_EQ(run("enumerate --set full 2 3").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("code-check --code /nonexistent/file").code, 2);
}
