#include "report.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "georeg/error.h"
#include "test_util.h"

namespace georeg::cli {
namespace {

CorrelationInput MortalityInput() {
  CorrelationInput input;
  input.n = testing::kMortalityN;
  input.phi = AssembleCorrelation(testing::MortalityOmega(), testing::MortalityTheta());
  return input;
}

Dataset RandomDataset(std::uint64_t seed, std::size_t n, std::size_t m) {
  std::mt19937_64 rng(seed);
  const testing::RandomProblem p = testing::MakeRandomProblem(n, m, rng);
  Dataset d;
  d.names.push_back("resp");
  d.columns.push_back(p.y);
  for (std::size_t j = 0; j < m; ++j) {
    d.names.push_back("v" + std::to_string(j + 1));
    d.columns.push_back(p.xs[j]);
  }
  return d;
}

TEST(BuildCorrelationReportTest, MortalityDefaults) {
  CorrelationRequest request;
  request.subset_max_size = 4;
  const AnalysisReport r = BuildCorrelationReport(MortalityInput(), request);
  EXPECT_EQ(r.input.mode, "correlation");
  EXPECT_EQ(r.input.response, "y");
  EXPECT_EQ(r.input.regressors, (std::vector<std::string>{"x1", "x2", "x3", "x4"}));
  EXPECT_FALSE(r.ols.has_value());
  EXPECT_FALSE(r.equivalence.has_value());
  EXPECT_TRUE(r.geometric.scale_free_only);
  EXPECT_NEAR(r.geometric.r_squared, 0.1437, 5e-4);
  ASSERT_TRUE(r.subsets.has_value());
  EXPECT_EQ(r.subsets->size(), 15u);
  EXPECT_TRUE(std::is_sorted(r.subsets->begin(), r.subsets->end(),
                             [](const SubsetRow& a, const SubsetRow& b) {
                               return a.r_squared > b.r_squared;
                             }));
  EXPECT_NEAR(r.subsets->front().r_squared, r.geometric.r_squared, 1e-12);
  EXPECT_EQ(r.subsets->front().variables.size(), 4u);
}

TEST(BuildCorrelationReportTest, MissingSampleSize) {
  CorrelationInput input = MortalityInput();
  input.n.reset();
  try {
    BuildCorrelationReport(input, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingData);
  }
  CorrelationRequest request;
  request.n = 53;
  EXPECT_NO_THROW(BuildCorrelationReport(input, request));
}

TEST(SubsetTableTest, SizeLimit) {
  const GeometricSummary s =
      FromCorrelations(testing::MortalityTheta(), testing::MortalityOmega(), 53);
  const auto rows = SubsetTable(s, {"a", "b", "c", "d"}, 1);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows.front().variables, (std::vector<std::string>{"d"}));
  for (const SubsetRow& row : rows) {
    EXPECT_NEAR(row.r_squared,
                testing::MortalityOmega()[row.indices[0]] *
                    testing::MortalityOmega()[row.indices[0]],
                1e-15);
    EXPECT_EQ(row.enhancement_difference, 0.0);
  }
}

TEST(BuildDatasetReportTest, SelectsColumnsAndCompares) {
  const Dataset d = RandomDataset(3, 40, 3);
  DatasetRequest request;
  request.response = "v2";
  request.regressors = {"resp", "v3"};
  const AnalysisReport r = BuildDatasetReport(d, request);
  EXPECT_EQ(r.input.response, "v2");
  EXPECT_EQ(r.input.m, 2u);
  ASSERT_TRUE(r.ols.has_value());
  ASSERT_TRUE(r.equivalence.has_value());
  EXPECT_TRUE(r.equivalence->passed);
  EXPECT_NEAR(r.ols->anova.r_squared, r.geometric.r_squared, 1e-10);
  ASSERT_TRUE(r.summary.y_mean.has_value());
}

TEST(BuildDatasetReportTest, ConstantColumnIsNamed) {
  Dataset d = RandomDataset(5, 20, 2);
  d.columns[2] = Vector(20, 3.0);
  try {
    BuildDatasetReport(d, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateVariable);
    EXPECT_NE(std::string(e.what()).find("'v2'"), std::string::npos) << e.what();
  }
}

TEST(BuildDatasetReportTest, CollinearColumnIsNamed) {
  Dataset d = RandomDataset(7, 20, 3);
  d.columns[3] = Add(Scale(d.columns[1], 2.0), d.columns[2]);
  try {
    BuildDatasetReport(d, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCollinearity);
    EXPECT_NE(std::string(e.what()).find("'v3'"), std::string::npos) << e.what();
  }
}

TEST(ReportJsonTest, RoundTripIsExactAtFullPrecision) {
  DatasetRequest request;
  request.subset_max_size = 3;
  const AnalysisReport r = BuildDatasetReport(RandomDataset(11, 30, 3), request);
  EXPECT_EQ(ReportFromJson(ToJson(r, 17)), r);

  CorrelationRequest corr;
  corr.subset_max_size = 2;
  const AnalysisReport c = BuildCorrelationReport(MortalityInput(), corr);
  EXPECT_EQ(ReportFromJson(ToJson(c, 17)), c);
}

TEST(ReportJsonTest, SerializationIsIdempotentAtReducedPrecision) {
  const AnalysisReport r = BuildDatasetReport(RandomDataset(13, 25, 2), {});
  const std::string once = ToJson(r, 6);
  EXPECT_EQ(ToJson(ReportFromJson(once), 6), once);
}

TEST(ReportJsonTest, PerfectFitWritesInfinityAsString) {
  Dataset d;
  d.names = {"y", "x1", "x2"};
  d.columns = {Vector{1.0, 3.0, 2.0, 7.0, 5.0}, Vector{1.0, 2.0, 3.0, 4.0, 5.0},
               Vector{0.0, 1.0, -1.0, 2.0, 0.5}};
  for (std::size_t i = 0; i < 5; ++i) {
    d.columns[0][i] = 1.0 + 2.0 * d.columns[1][i] - 3.0 * d.columns[2][i];
  }
  const AnalysisReport r = BuildDatasetReport(d, {});
  const auto j = nlohmann::json::parse(ToJson(r));
  EXPECT_EQ(j["geometric"]["f_stat"], "inf");
  EXPECT_EQ(j["ols"]["anova"]["f_stat"], "inf");
  EXPECT_TRUE(std::isinf(ReportFromJson(ToJson(r)).geometric.f_stat));
}

TEST(ReportTextTest, NumbersMatchJson) {
  const AnalysisReport r = BuildCorrelationReport(MortalityInput(), {});
  const std::string text = ToText(r, 6);
  const auto j = nlohmann::json::parse(ToJson(r, 6));
  auto appears = [&](double v) { return text.find(FormatNumber(v, 6)) != std::string::npos; };
  EXPECT_TRUE(appears(j["geometric"]["r_squared"].get<double>()));
  EXPECT_TRUE(appears(j["geometric"]["f_stat"].get<double>()));
  EXPECT_TRUE(appears(j["geometric"]["p_value"].get<double>()));
  for (const auto& v : j["spectral"]["eigenvalues"]) EXPECT_TRUE(appears(v.get<double>()));
  for (const auto& v : j["spectral"]["s_values"]) EXPECT_TRUE(appears(v.get<double>()));
  for (const auto& v : j["spectral"]["enhancement_terms"]) {
    EXPECT_TRUE(appears(v.get<double>()));
  }
}

TEST(FormatNumberTest, Basics) {
  EXPECT_EQ(FormatNumber(0.143727123, 6), "0.143727");
  EXPECT_EQ(FormatNumber(std::numeric_limits<double>::infinity(), 6), "inf");
  EXPECT_EQ(FormatNumber(2.0, 6), "2");
}

}  // namespace
}  // namespace georeg::cli
