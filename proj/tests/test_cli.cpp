#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <knotfermion/cli.hpp>

using namespace knotfermion;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

Json parse(const CliRun& r) { return Json::parse(r.out); }

/// Runs the installed binary, returning its exit status and standard output.
std::pair<int, std::string> run_binary(const std::string& args) {
  std::string cmd = std::string(KNOTFERMION_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(CliCompute, SingleBoxCorrelator) {
  CliRun r = run({"compute", "correlator", "--Q", "2", "--P", "3", "--mu", "1", "--u-order", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = parse(r);
  EXPECT_EQ(j["series"]["floor"], -1);
  EXPECT_EQ(j["series"]["cap"], 3);
  // u^{-1}: b (A^2 - 1) A^{b-1} = 3/2 (Ahat^5 - Ahat)
  Json first = j["series"]["coeffs"][0];
  EXPECT_EQ(first[0], -1);
  EXPECT_EQ(first[1], Json::parse(R"([[1,"-3/2"],[5,"3/2"]])"));
}

TEST(CliCompute, GenusCoefficient) {
  CliRun r = run({"compute", "correlator", "--Q", "2", "--P", "3", "--mu", "1", "--genus", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r)["value"], Json::parse(R"([[1,"-2"],[5,"2"]])"));
}

TEST(CliCompute, UnknotHomfly) {
  CliRun r = run({"compute", "homfly", "--Q", "1", "--P", "1", "-R", "1", "--u-order", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json terms = parse(r)["terms"];
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms[0]["p"], Json::parse("[1]"));
  EXPECT_EQ(terms[0]["coeff"]["coeffs"], Json::parse(R"([[0,[[1,"1"]]]])"));
}

TEST(CliCompute, WaveFunction) {
  CliRun r = run({"compute", "psi", "--Q", "2", "--P", "3", "--l-max", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json cs = parse(r)["coefficients"];
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[0]["value"]["num"], Json::parse(R"([[0,[[0,"1"]]]])"));
  EXPECT_EQ(cs[0]["value"]["den"], Json::parse(R"([[0,[[0,"1"]]]])"));
}

TEST(CliCompute, XiCoefficients) {
  CliRun r = run({"compute", "xi", "--Q", "2", "--P", "3", "--index", "1", "--m-max", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json cs = parse(r)["coefficients"];
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[0]["value"], Json::parse(R"([[1,"-1"]])"));
}

TEST(CliVerify, JacobiSuitePasses) {
  CliRun r = run({"verify", "--suite", "jacobi", "--m-max", "12"});
  EXPECT_EQ(r.code, 0) << r.out;
  Json j = parse(r);
  EXPECT_EQ(j["suite"], "jacobi");
  for (auto& c : j["checks"]) EXPECT_NE(c["status"], "fail") << c.dump();
}

TEST(CliVerify, ReportSchema) {
  CliRun r = run({"verify", "--suite", "xi", "--Q", "3", "--P", "2"});
  ASSERT_EQ(r.code, 0);
  Json j = parse(r);
  for (const char* key : {"suite", "params", "checks", "ms"}) EXPECT_TRUE(j.contains(key)) << key;
  for (auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("name"));
    EXPECT_TRUE(c.contains("status"));
    EXPECT_TRUE(c.contains("witness"));
  }
  EXPECT_EQ(j["params"]["Q"], 3);
}

TEST(CliVerify, DeterministicQuasipolyReport) {
  std::vector<std::string> args{"verify", "--suite", "quasipoly", "--Q", "2", "--P", "3", "--mode", "specialized", "--seed", "7", "--no-timing"};
  CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse(a)["ms"], 0);
  EXPECT_EQ(parse(a)["params"]["seed"], 7);
}

TEST(CliVerify, WritesReportFile) {
  std::string path = ::testing::TempDir() + "knotfermion_report.json";
  CliRun r = run({"verify", "--suite", "qcurve", "--Q", "1", "--P", "2", "--N", "5", "--out", path, "--no-timing"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  Json j = Json::parse(f);
  EXPECT_EQ(j["suite"], "qcurve");
}

TEST(CliFlags, BadValuesNameTheFlag) {
  struct Case {
    std::vector<std::string> args;
    std::string flag;
  };
  std::vector<Case> cases{{{"verify", "--suite", "xi", "--Q", "0"}, "--Q"},
                          {{"verify", "--suite", "xi", "--Q", "2", "--P", "4"}, "--P"},
                          {{"verify", "--suite", "nonsense"}, "--suite"},
                          {{"verify", "--mode", "fast"}, "--mode"},
                          {{"verify", "--suite", "threeway", "--max-weight", "0"}, "--max-weight"},
                          {{"compute", "xi", "--index", "3"}, "--index"},
                          {{"compute", "correlator", "--mu", "2,0"}, "--mu"},
                          {{"compute", "homfly", "-R", "1", "--u-order", "0"}, "--u-order"},
                          {{"verify", "--bogus"}, "--bogus"}};
  for (const Case& c : cases) {
    CliRun r = run(c.args);
    EXPECT_EQ(r.code, 2) << c.flag;
    EXPECT_NE(r.err.find(c.flag), std::string::npos) << r.err;
  }
}

TEST(CliBinary, ExitCodes) {
  auto ok = run_binary("verify --suite xi --no-timing");
  EXPECT_EQ(ok.first, 0);
  EXPECT_EQ(Json::parse(ok.second)["suite"], "xi");
  EXPECT_EQ(run_binary("verify --Q 0").first, 2);
  EXPECT_EQ(run_binary("").first, 2);
}

TEST(CliBinary, ByteIdenticalAcrossProcesses) {
  auto a = run_binary("verify --suite unstable --seed 5 --no-timing");
  auto b = run_binary("verify --suite unstable --seed 5 --no-timing");
  EXPECT_EQ(a.first, 0);
  EXPECT_EQ(a.second, b.second);
}
