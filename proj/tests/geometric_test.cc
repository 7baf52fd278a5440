#include "georeg/geometric.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "georeg/error.h"
#include "georeg/ols.h"
#include "georeg/summary.h"
#include "test_util.h"

namespace georeg {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kParse;
}

TEST(FitGeometricTest, MortalityCorrelations) {
  const GeometricSummary s =
      FromCorrelations(testing::MortalityTheta(), testing::MortalityOmega(),
                       testing::kMortalityN);
  const GeometricFit fit = FitGeometric(s);
  EXPECT_NEAR(fit.r_squared(), 0.1437, 5e-4);
  EXPECT_NEAR(fit.f_stat(), 2.0138, 5e-3);
  EXPECT_NEAR(fit.p_value(), 0.1075, 5e-4);
  EXPECT_EQ(fit.df_reg(), 4u);
  EXPECT_EQ(fit.df_res(), 48u);
  EXPECT_TRUE(fit.scale_free_only());
  EXPECT_EQ(CodeOf([&] { fit.beta_hat(); }), ErrorCode::kMissingNorms);
  EXPECT_EQ(CodeOf([&] { fit.anova(); }), ErrorCode::kMissingNorms);
  EXPECT_NEAR(fit.r_squared(),
              testing::QuadraticFormByInverse(testing::MortalityTheta(),
                                              testing::MortalityOmega()),
              1e-13);
}

TEST(FitGeometricTest, OrthogonalRegressorsAddSquaredCorrelations) {
  const Vector omega{0.3, -0.4, 0.1};
  const GeometricFit fit = FitGeometric(FromCorrelations(Matrix::Identity(3), omega, 30));
  EXPECT_NEAR(fit.r_squared(), 0.09 + 0.16 + 0.01, 1e-15);
}

TEST(FitGeometricTest, SingleRegressor) {
  const double r = 0.6;
  const GeometricFit fit = FitGeometric(FromCorrelations(Matrix{{1.0}}, Vector{r}, 12));
  EXPECT_NEAR(fit.r_squared(), r * r, 1e-15);
  EXPECT_NEAR(fit.f_stat(), 10.0 * r * r / (1.0 - r * r), 1e-12);
  EXPECT_NEAR(fit.standardized_coefficients()[0], r, 1e-15);
}

TEST(FitGeometricTest, WithNormsGivesCoefficientsAndAnova) {
  // ‖y‖ = 10, ‖x‖ = 2, r = 0.5: β̂ = 10·0.5/2, SS_reg = 100·0.25.
  const GeometricSummary s =
      FromCorrelations(Matrix{{1.0}}, Vector{0.5}, 22, 10.0, Vector{2.0});
  const GeometricFit fit = FitGeometric(s);
  EXPECT_FALSE(fit.scale_free_only());
  EXPECT_NEAR(fit.beta_hat()[0], 2.5, 1e-15);
  EXPECT_NEAR(fit.anova().ss_tot, 100.0, 1e-13);
  EXPECT_NEAR(fit.anova().ss_reg, 25.0, 1e-13);
  EXPECT_NEAR(fit.anova().ss_res, 75.0, 1e-13);
  EXPECT_NEAR(fit.anova().sigma2_hat, 75.0 / 20.0, 1e-13);
  EXPECT_NEAR(fit.anova().sigma2_y_hat, 100.0 / 21.0, 1e-13);
  EXPECT_EQ(CodeOf([&] { fit.beta0_hat(); }), ErrorCode::kMissingData);
}

TEST(FitGeometricTest, QuadraticFormSlightlyAboveOneIsClamped) {
  const GeometricSummary s = FromCorrelations(Matrix::Identity(2), Vector{1.0, 1e-5}, 10);
  const GeometricFit fit = FitGeometric(s);
  EXPECT_EQ(fit.r_squared(), 1.0);
  EXPECT_TRUE(fit.perfect_fit());
  EXPECT_TRUE(std::isinf(fit.f_stat()));
  EXPECT_EQ(fit.p_value(), 0.0);
  EXPECT_FALSE(fit.warnings().empty());
}

TEST(RSquaredSubsetTest, AllSubsetsMatchRefit) {
  std::mt19937_64 rng(61);
  const testing::RandomProblem p = testing::MakeRandomProblem(40, 4, rng);
  const GeometricSummary s = Summarize(p.y, p.xs);
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<std::size_t> subset;
    std::vector<Vector> chosen;
    for (std::size_t j = 0; j < 4; ++j) {
      if (mask & (1u << j)) {
        subset.push_back(j);
        chosen.push_back(p.xs[j]);
      }
    }
    const double refit = FitOls(p.y, chosen).anova.r_squared;
    EXPECT_NEAR(RSquaredSubset(s, subset), refit, 1e-10) << "mask " << mask;
  }
}

TEST(RSquaredSubsetTest, NestedSubsetsNeverLoseFit) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const testing::RandomProblem p = testing::MakeRandomProblem(30, 5, rng);
    const GeometricSummary s = Summarize(p.y, p.xs);
    std::vector<std::size_t> subset;
    double previous = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
      subset.push_back(j);
      const double r2 = RSquaredSubset(s, subset);
      EXPECT_GE(r2, previous - 1e-12);
      previous = r2;
    }
  }
}

TEST(RSquaredSubsetTest, Errors) {
  const GeometricSummary s =
      FromCorrelations(testing::MortalityTheta(), testing::MortalityOmega(), 53);
  EXPECT_EQ(CodeOf([&] { RSquaredSubset(s, std::vector<std::size_t>{}); }),
            ErrorCode::kEmptySubset);
  EXPECT_EQ(CodeOf([&] { RSquaredSubset(s, std::vector<std::size_t>{4}); }),
            ErrorCode::kDimension);
  EXPECT_EQ(CodeOf([&] { RSquaredSubset(s, std::vector<std::size_t>{1, 1}); }),
            ErrorCode::kDimension);
}

TEST(FitGeometricTest, AgreesWithOlsOnRawData) {
  std::mt19937_64 rng(71);
  const testing::RandomProblem p = testing::MakeRandomProblem(50, 3, rng);
  const GeometricFit geo = FitGeometric(Summarize(p.y, p.xs));
  const RegressionFit ols = FitOls(p.y, p.xs);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(geo.beta_hat()[j], ols.beta_hat[j], 1e-9 * std::abs(ols.beta_hat[j]));
  }
  EXPECT_NEAR(geo.beta0_hat(), ols.beta0_hat, 1e-9 * std::abs(ols.beta0_hat) + 1e-9);
  EXPECT_NEAR(geo.r_squared(), ols.anova.r_squared, 1e-12);
}

TEST(ComparePathsTest, RandomProblemsPass) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const testing::RandomProblem p = testing::MakeRandomProblem(60, 4, rng, -3.0, 3.0);
    for (bool intercept : {true, false}) {
      const EquivalenceReport report =
          ComparePaths(p.y, p.xs, SummaryOptions{.intercept = intercept});
      EXPECT_TRUE(report.passed()) << report.max_relative;
      EXPECT_FALSE(report.fields.empty());
    }
  }
}

}  // namespace
}  // namespace georeg
