#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "harmonic/cli.hpp"
#include "json.hpp"

using harmonic::cli::main_entry;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "harmonic");
  std::ostringstream out, err;
  const int status = main_entry(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("harmonic_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

}  // namespace

TEST(Cli, SolveHarmonicSquareCertifies) {
  const Result r = run({"solve", "--op", "dxx + dyy", "--f", "z^2", "--g", "0", "--real", "--grid", "0:1:17,0:1:17",
                        "--verify"});
  EXPECT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["certified"], true);
  EXPECT_EQ(j["verification"]["certified"], true);
}

TEST(Cli, NegativeControlExitsTwo) {
  const Result r = run({"verify", "--op", "dxx + dyy", "--field", "abs(z)^2 @ y-j*x", "--unchecked"});
  EXPECT_EQ(r.status, 2);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["max_residual"].get<double>(), 4.0, 1e-6);
  EXPECT_EQ(j["certified"], false);
}

TEST(Cli, NegativeControlNeedsUnchecked) {
  const Result r = run({"verify", "--op", "dxx + dyy", "--field", "abs(z)^2 @ y-j*x"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.err.rfind("E", 0), 0u);
}

TEST(Cli, FactorWave) {
  const Result r = run({"factor", "--op", "dxx - dyy"});
  EXPECT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["roots"], nlohmann::json::parse("[1.0, -1.0]"));
  EXPECT_EQ(j["factors"][0], "dx + dy");
  EXPECT_EQ(j["factors"][1], "dx - dy");
  EXPECT_EQ(j["commutation"]["pass"], true);
}

TEST(Cli, FactorLaplacianRoots) {
  const Result r = run({"factor", "--op", "dxx + dyy"});
  EXPECT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["roots"][0]["im"], 1.0);
  EXPECT_EQ(j["roots"][1]["im"], -1.0);
}

TEST(Cli, UsageErrorsExitOne) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"nosuch"},
           {"eval"},
           {"eval", "--expr", "sin(z"},
           {"factor", "--op", "dzz"},
           {"factor", "--op", "dxx + dx"},
           {"solve", "--grid", "0:1:1,0:1:4"},
           {"solve", "--op", "dxx + 2*dxy + dyy", "--f", "z"},
           {"particular", "--path", "diagonal"},
           {"particular", "--panels", "3"},
           {"bay", "--n", "0"},
           {"eval", "--expr", "1/z", "--at", "0,0"},
       }) {
    const Result r = run(args);
    EXPECT_EQ(r.status, 1) << (args.empty() ? "" : args[0]);
    EXPECT_EQ(r.err.rfind("E", 0), 0u) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Cli, ErrorCodesArePrefixed) {
  const Result r = run({"eval", "--expr", "sin(z"});
  EXPECT_EQ(r.err.substr(0, 6), "E101: ");
}

TEST(Cli, HelpExitsZero) {
  const Result top = run({"--help"});
  EXPECT_EQ(top.status, 0);
  EXPECT_NE(top.out.find("solve"), std::string::npos);
  const Result sub = run({"particular", "--help"});
  EXPECT_EQ(sub.status, 0);
  EXPECT_NE(sub.out.find("--panels"), std::string::npos);
}

TEST(Cli, EvalWithDerivative) {
  const Result r = run({"eval", "--expr", "j*cos(z)", "--at", "0,1", "--diff"});
  EXPECT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["derivative"], "-j*sin(z)");
  EXPECT_NEAR(j["value"][1].get<double>(), 1.5430806348, 1e-10);
  EXPECT_EQ(j["holomorphic"], true);
}

TEST(Cli, ParticularCertifies) {
  for (const char* g : {"z", "exp(z)"}) {
    const Result r = run({"particular", "--g", g, "--fhom", "sin(z)", "--path", "yx"});
    EXPECT_EQ(r.status, 0) << g << r.err;
  }
}

TEST(Cli, BayAndWaveVerify) {
  EXPECT_EQ(run({"bay", "--verify"}).status, 0);
  EXPECT_EQ(run({"bay", "--n", "3", "--h", "0.5", "--k", "2", "--verify"}).status, 0);
  const Result w = run({"wave", "--f", "exp(z)", "--g", "sin(z)", "--grid", "0:1:33,0:1:25", "--verify"});
  EXPECT_EQ(w.status, 0) << w.out;
  EXPECT_EQ(nlohmann::json::parse(w.out)["factorization_max_gap"], 0.0);
}

TEST_F(CliFiles, CsvHeaders) {
  ASSERT_EQ(run({"solve", "--f", "z^2", "--grid", "0:1:3,0:1:3", "--out", path("s.csv")}).status, 0);
  const std::string s = slurp(path("s.csv"));
  EXPECT_EQ(s.substr(0, s.find('\n')), "x,y,u");
  EXPECT_NE(s.find("\n1,1,0\n"), std::string::npos) << s;
  ASSERT_EQ(run({"solve", "--f", "z^2", "--complex", "--grid", "0:1:3,0:1:3", "--out", path("c.csv")}).status, 0);
  EXPECT_EQ(slurp(path("c.csv")).substr(0, 10), "x,y,re,im\n");
  ASSERT_EQ(run({"particular", "--g", "z", "--out", path("p.csv")}).status, 0);
  EXPECT_EQ(slurp(path("p.csv")).substr(0, 35), "x,y,a,b,residual_re,residual_im\n-1,");
  ASSERT_EQ(run({"bay", "--out", path("b.csv")}).status, 0);
  EXPECT_EQ(slurp(path("b.csv")).substr(0, 15), "x,y,psi,vx,vy\n0");
  ASSERT_EQ(run({"wave", "--f", "z", "--out", path("w.csv")}).status, 0);
  EXPECT_EQ(slurp(path("w.csv")).substr(0, 6), "x,y,u\n");
  // Only the final files remain; temporaries are renamed away.
  for (const auto& e : std::filesystem::directory_iterator(dir_)) EXPECT_NE(e.path().extension(), ".tmp");
}

TEST_F(CliFiles, SeventeenSignificantDigits) {
  ASSERT_EQ(run({"solve", "--f", "exp(z)", "--grid", "0:1:4,0:1:4", "--out", path("e.csv")}).status, 0);
  std::istringstream is(slurp(path("e.csv")));
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  std::getline(is, line);
  // Second row: x = 1/3 printed round-trip safe.
  const std::string x = line.substr(0, line.find(','));
  EXPECT_EQ(std::stod(x), 1.0 / 3.0);
  EXPECT_EQ(x, "0.33333333333333331");
}

TEST_F(CliFiles, Determinism) {
  const std::vector<std::vector<std::string>> runs{
      {"solve", "--f", "exp(z)", "--g", "sin(z)", "--verify", "--seed", "7"},
      {"factor", "--op", "dxx + dyy", "--seed", "3"},
      {"particular", "--g", "exp(z)"},
      {"verify", "--field", "exp(z) @ y+j*x"},
      {"bay", "--n", "2", "--verify"},
      {"wave", "--f", "z^3", "--g", "exp(z)", "--verify"},
  };
  int k = 0;
  for (const auto& base : runs) {
    std::string outputs[2], reports[2];
    for (int rep = 0; rep < 2; ++rep) {
      auto args = base;
      const std::string csv = path("o" + std::to_string(k) + "_" + std::to_string(rep) + ".csv");
      const std::string js = path("r" + std::to_string(k) + "_" + std::to_string(rep) + ".json");
      if (base[0] != "factor" && base[0] != "verify") {
        args.push_back("--out");
        args.push_back(csv);
      }
      args.push_back(base[0] == "verify" ? "--json" : "--report");
      args.push_back(js);
      const Result r = run(args);
      EXPECT_NE(r.status, 1) << base[0] << r.err;
      outputs[rep] = std::filesystem::exists(csv) ? slurp(csv) : r.out;
      reports[rep] = slurp(js);
      EXPECT_EQ(reports[rep], r.out);
    }
    EXPECT_EQ(outputs[0], outputs[1]) << base[0];
    EXPECT_EQ(reports[0], reports[1]) << base[0];
    ++k;
  }
}

TEST_F(CliFiles, UnwritableOutputFailsCleanly) {
  const Result r = run({"solve", "--f", "z", "--out", path("missing/dir/x.csv")});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.err.rfind("E", 0), 0u);
}
