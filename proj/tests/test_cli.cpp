#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace ordinarium;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ordinarium_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string last_line(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') + 1);
}

}  // namespace

TEST(Cli, SplitExample) {
  const auto r = run({"split", "--field", "1,0,1", "--prime", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(1)(1) certified\n");
}

TEST(Cli, SplitSeveralPrimesAndCsv) {
  const auto path = scratch("split.csv");
  const auto r = run({"split", "--field", "1,0,1", "--prime", "3", "5", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3: (2) certified"), std::string::npos) << r.out;
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,type,inertia_partition,certified");
  EXPECT_NE(csv.find("\n5,(1)(1),1 1,1\n"), std::string::npos) << csv;
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Cli, FooterCarriesVersionAndConfig) {
  const auto path = scratch("footer.csv");
  ASSERT_EQ(run({"split", "--field", "1,0,1", "--prime", "5", "--out", path.string()}).code, 0);
  const std::string tail = last_line(slurp(path));
  ASSERT_EQ(tail.rfind("# ", 0), 0u) << tail;
  const auto j = nlohmann::json::parse(tail.substr(2));
  EXPECT_EQ(j["tool"], "ordinarium");
  EXPECT_EQ(j["version"], kVersion);
  EXPECT_EQ(j["command"], "split");
  EXPECT_EQ(j["config"]["field"], "1 0 1");
  EXPECT_EQ(j["config"]["primes"], nlohmann::json::array({5}));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"split", "--field", "1,0,1", "--prime", "5", "--bogus"}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  const auto r = run({"split", "--prime", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
  // Library precondition failures are usage errors as well.
  EXPECT_EQ(run({"split", "--field", "1,x,1", "--prime", "5"}).code, 2);
  EXPECT_EQ(run({"split", "--field", "1,0,1", "--prime", "6"}).code, 2);
  EXPECT_EQ(run({"curve-scan", "--p", "5"}).code, 2);
}

TEST(Cli, HelpAndVersion) {
  const auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("curve-scan"), std::string::npos);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, std::string(kVersion) + "\n");
}

TEST(Cli, TomlConfigWithFlagOverride) {
  const auto cfg = scratch("split.toml");
  {
    std::ofstream f(cfg);
    f << "[split]\nfield = \"1,0,1\"\nprime = [5]\n";
  }
  const auto a = run({"--config", cfg.string(), "split"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, "(1)(1) certified\n");
  const auto b = run({"--config", cfg.string(), "split", "--prime", "7"});
  EXPECT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.out, "(2) certified\n");
}

TEST(Cli, VerifyGl2) {
  const auto path = scratch("gl2.csv");
  const auto r = run({"verify-gl2", "--lmax", "13", "--out", path.string()});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(last_line(r.out), "PASS");
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "ell,g',d,n,c,|C|,|A|,ratio,ell*ratio");
  // 5 ells times 3 values of c, plus header and footer.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
  EXPECT_NE(csv.find("\n3,1,1,1,1,18,"), std::string::npos) << csv;
}

TEST(Cli, VerifyGroup) {
  const auto r = run({"verify-group", "--q", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("S_4: 30 subgroups, 9 transitive (5 classes)"), std::string::npos) << r.out;
}

TEST(Cli, SearchPrimes) {
  const auto r = run({"search-primes", "--clause", "1,0,1:inert", "--clause", "-2,0,1:completely-split", "--hi", "1000"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("witness: 7"), std::string::npos) << r.out;
}

TEST(Cli, DensityPrimes) {
  const auto r = run({"density-report", "--source", "primes", "--x", "10000"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pi(10000) = 1229"), std::string::npos) << r.out;
}

TEST(Cli, DensityExpectationDecidesExitCode) {
  const std::vector<std::string> base{"density-report", "--source", "field", "--field", "1,0,1", "--pred", "inert", "--x", "10000"};
  auto pass = base;
  pass.insert(pass.end(), {"--expect", "0.5"});
  EXPECT_EQ(run(pass).code, 0);
  auto fail = base;
  fail.insert(fail.end(), {"--expect", "0.9"});
  EXPECT_EQ(run(fail).code, 1);
}

TEST(Cli, CurveScanReportsException) {
  const auto json = scratch("scan.json");
  const auto r = run({"curve-scan", "--p", "7", "--t", "1", "--lmax", "40", "--mode", "dichotomy", "--json", json.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("EXCEPTION"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(json));
  ASSERT_EQ(j["exceptions"].size(), 1u);
  EXPECT_EQ(j["exceptions"][0]["ell"], 37);
  EXPECT_EQ(j["exceptions"][0]["N"], "222");
  EXPECT_EQ(j["footer"]["command"], "curve-scan");
}

TEST(Cli, CurveScanGenusOnePasses) {
  const auto r = run({"curve-scan", "--p", "3", "--t", "0", "--lmax", "60"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(last_line(r.out), "PASS");
}

TEST(Cli, FormCommandOnShippedData) {
  const std::string in = std::string(ORDINARIUM_DATA_DIR) + "/forms/y2_x3_minus_x.json";
  const auto r = run({"mf-ordinary", "--in", in, "--xmax", "10000", "--expect", "0.5"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("congruence and ordinariness transfer: PASS"), std::string::npos) << r.out;
}

TEST(Cli, BadThreadsEnvIsUsageError) {
  ::setenv("ORDINARIUM_THREADS", "zero", 1);
  EXPECT_EQ(run({"split", "--field", "1,0,1", "--prime", "5"}).code, 2);
  ::unsetenv("ORDINARIUM_THREADS");
}

TEST(Cli, ThreadCountDoesNotChangeCsv) {
  const auto a = scratch("det1.csv");
  const auto b = scratch("det4.csv");
  const std::vector<std::string> args{"curve-scan", "--p", "7", "--t", "3", "--lmax", "40", "--mode", "split", "--out"};
  auto r1 = args;
  r1.insert(r1.begin(), {"--threads", "1"});
  r1.push_back(a.string());
  auto r4 = args;
  r4.insert(r4.begin(), {"--threads", "4"});
  r4.push_back(b.string());
  run(r1);
  run(r4);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
}
