#include "commands.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "georeg/linalg.h"
#include "georeg/summary.h"
#include "test_util.h"

namespace georeg::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result RunTool(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("georeg_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << content;
    return path.string();
  }

  fs::path dir_;
};

std::string MortalityFile() {
  return std::string(GEOREG_DATA_DIR) + "/mortality_correlation.txt";
}

// A 53-row dataset whose sample correlation matrix equals the given Φ:
// orthonormal centered columns Q mixed by the Cholesky factor of Φ.
std::string CsvWithCorrelation(const Matrix& phi, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<double> ones(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const auto basis = testing::GramSchmidtBasis(n, rng, ones);
  const Matrix lower = Cholesky(phi).lower();
  const std::size_t p = phi.rows();
  std::ostringstream csv;
  csv << "y";
  for (std::size_t j = 1; j < p; ++j) csv << ",x" << j;
  csv << "\n";
  char buf[40];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < p; ++c) {
      double v = 10.0 * (c + 1);
      for (std::size_t k = 0; k <= c; ++k) v += lower(c, k) * basis[k + 1][i];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      csv << (c ? "," : "") << buf;
    }
    csv << "\n";
  }
  return csv.str();
}

TEST_F(CliTest, FromCorrelationReportsMortalityNumbers) {
  const Result r = RunTool({"from-correlation", MortalityFile()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.err.empty());
  for (const char* number : {"0.143727", "2.01422", "0.1074", "1.57322", "0.91533",
                             "0.123829", "0.011439", "enhancement: yes"}) {
    EXPECT_NE(r.out.find(number), std::string::npos) << number;
  }
}

TEST_F(CliTest, JsonOutputParses) {
  const Result r = RunTool({"from-correlation", MortalityFile(), "--format", "json",
                            "--precision", "10", "--subsets", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["geometric"]["r_squared"].get<double>(), 0.1437, 5e-4);
  EXPECT_EQ(j["subsets"].size(), 10u);
  EXPECT_TRUE(j["ols"].is_null());
}

TEST_F(CliTest, NonPsdInputNamesTheViolation) {
  const std::string path = Write("bad.txt", "n 30\n0.99 0.99\n1 -0.99\n-0.99 1\n");
  const Result r = RunTool({"from-correlation", path});
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("negative-eigenvalue"), std::string::npos) << r.err;
}

TEST_F(CliTest, AsymmetricInputNamesTheViolation) {
  const std::string path = Write("asym.txt", "n 30\n1 0.2 0.1\n0.2 1 0.3\n0.1 0.5 1\n");
  const Result r = RunTool({"from-correlation", path});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("asymmetric"), std::string::npos) << r.err;
}

TEST_F(CliTest, FitReproducesCorrelationAnalysisFromRawData) {
  const Matrix phi =
      AssembleCorrelation(testing::MortalityOmega(), testing::MortalityTheta());
  const std::string path = Write("mortality.csv", CsvWithCorrelation(phi, 53, 7));
  const Result r = RunTool({"fit", path, "--check-equivalence"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.143727"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2.01422"), std::string::npos);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST_F(CliTest, FitColumnSelectionAndNoIntercept) {
  const std::string path = Write("d.csv", "a,b,c\n1,2,0.5\n2,3.5,1\n3,3,4\n5,6,2\n4,8,3\n");
  Result r =
      RunTool({"fit", path, "--response", "c", "--regressors", "a,b", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["input"]["response"], "c");
  EXPECT_EQ(j["input"]["regressors"], nlohmann::json::array({"a", "b"}));

  r = RunTool({"fit", path, "--no-intercept", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["input"]["intercept"], false);
  EXPECT_EQ(j["geometric"]["df_res"], 3);
}

TEST_F(CliTest, ConstantColumnFailsWithName) {
  const std::string path = Write("c.csv", "y,x,k\n1,2,5\n2,1,5\n4,3,5\n3,5,5\n");
  const Result r = RunTool({"fit", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("'k'"), std::string::npos) << r.err;
}

TEST_F(CliTest, ParseErrorsReportLine) {
  const std::string path = Write("p.csv", "y,x\n1,2\n2,oops\n");
  const Result r = RunTool({"fit", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_EQ(RunTool({"fit", (dir_ / "missing.csv").string()}).code, 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_NE(RunTool({}).code, 0);
  EXPECT_NE(RunTool({"bogus"}).code, 0);
  EXPECT_NE(RunTool({"from-correlation", MortalityFile(), "--format", "xml"}).code, 0);
  EXPECT_NE(RunTool({"from-correlation", MortalityFile(), "--precision", "40"}).code, 0);
  EXPECT_EQ(RunTool({"--help"}).code, 0);
}

TEST_F(CliTest, MissingSampleSize) {
  const std::string path = Write("non.txt", "0.1 0.2\n1 0.3\n0.3 1\n");
  Result r = RunTool({"from-correlation", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("missing"), std::string::npos) << r.err;
  r = RunTool({"from-correlation", path, "--n", "25"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, SubsetsCommand) {
  Result r = RunTool({"subsets", MortalityFile(), "--max-size", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Subsets"), std::string::npos);
  EXPECT_EQ(r.out.find("Principal components"), std::string::npos);
  EXPECT_NE(r.out.find("0.0770618"), std::string::npos);

  r = RunTool({"subsets", MortalityFile(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["subsets"].size(), 15u);
  EXPECT_FALSE(j.contains("spectral"));

  const std::string csv = Write("s.csv", "y,a,b\n1,2,0.5\n2,3.5,1\n3,3,4\n5,6,2\n4,8,3\n");
  r = RunTool({"subsets", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("a,b"), std::string::npos);
}

TEST_F(CliTest, JsonCorrelationInput) {
  const std::string path = Write(
      "c.json", R"({"n": 53, "names": ["rate", "a", "b"], "omega": [0.1158, 0.1106],
                    "theta": [[1, 0.2956], [0.2956, 1]], "y_norm": 3, "x_norms": [1, 2]})");
  const Result r = RunTool({"from-correlation", path, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["input"]["response"], "rate");
  EXPECT_FALSE(j["geometric"]["beta_hat"].is_null());
}

}  // namespace
}  // namespace georeg::cli
