#include "georeg/summary.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "georeg/eigen.h"
#include "georeg/error.h"
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

TEST(SummarizeTest, MatchesBruteForceProductMoment) {
  const Vector y{2.0, 4.1, 5.9, 8.2, 9.7, 12.5};
  const Vector x1{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  const Vector x2{3.0, -1.0, 4.0, 1.0, -5.0, 9.0};
  const std::vector<Vector> xs{x1, x2};
  const GeometricSummary s = Summarize(y, xs);
  EXPECT_EQ(s.n(), 6u);
  EXPECT_EQ(s.m(), 2u);
  EXPECT_NEAR(s.omega()[0], testing::BruteCorrelation(y, x1), 1e-14);
  EXPECT_NEAR(s.omega()[1], testing::BruteCorrelation(y, x2), 1e-14);
  EXPECT_NEAR(s.theta()(0, 1), testing::BruteCorrelation(x1, x2), 1e-14);
  EXPECT_EQ(s.theta()(0, 0), 1.0);
  EXPECT_EQ(s.theta()(1, 1), 1.0);
  EXPECT_NEAR(s.y_mean(), 7.066666666666666, 1e-14);
  EXPECT_NEAR(s.x_means()[0], 3.5, 1e-15);
  // ‖x1 - x̄1‖² = 17.5.
  EXPECT_NEAR(s.x_norms()[0], std::sqrt(17.5), 1e-14);
  EXPECT_EQ(s.residual_df(), 3u);
  EXPECT_EQ(s.total_df(), 5u);
}

TEST(SummarizeTest, NoInterceptUsesRawVectors) {
  const Vector y{1.0, 2.0, 2.0};
  const std::vector<Vector> xs{Vector{1.0, 1.0, 1.0}};
  const GeometricSummary s = Summarize(y, xs, SummaryOptions{.intercept = false});
  EXPECT_NEAR(s.omega()[0], 5.0 / (3.0 * std::sqrt(3.0)), 1e-15);
  EXPECT_NEAR(s.y_norm(), 3.0, 1e-15);
  EXPECT_EQ(s.residual_df(), 2u);
  EXPECT_EQ(s.total_df(), 3u);
}

TEST(SummarizeTest, ConstantColumnNamesItsIndex) {
  const Vector y{1.0, 2.0, 3.0, 5.0};
  const std::vector<Vector> xs{Vector{1.0, 2.0, 4.0, 3.0}, Vector{7.0, 7.0, 7.0, 7.0}};
  try {
    Summarize(y, xs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateVariable);
    EXPECT_EQ(e.index(), std::optional<std::size_t>(2));
  }
  try {
    Summarize(Vector{4.0, 4.0, 4.0, 4.0}, xs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateVariable);
    EXPECT_EQ(e.index(), std::optional<std::size_t>(0));
  }
}

TEST(SummarizeTest, ErrorKinds) {
  const Vector y{1.0, 2.0, 3.0, 5.0};
  EXPECT_EQ(CodeOf([&] { Summarize(y, std::vector<Vector>{}); }), ErrorCode::kNoExplanatory);
  EXPECT_EQ(CodeOf([&] { Summarize(y, std::vector<Vector>{Vector{1.0, 2.0}}); }),
            ErrorCode::kDimension);
  // n = 3 leaves no residual degrees of freedom for m = 2 with intercept.
  EXPECT_EQ(CodeOf([] {
              Summarize(Vector{1.0, 2.0, 4.0},
                        std::vector<Vector>{Vector{1.0, 0.0, 2.0}, Vector{0.0, 1.0, 3.0}});
            }),
            ErrorCode::kInsufficientData);
  EXPECT_EQ(CodeOf([&] {
              Summarize(y, std::vector<Vector>{Vector{1.0, 2.0, 3.0, 4.0},
                                               Vector{2.0, 4.0, 6.0, 8.0}});
            }),
            ErrorCode::kCollinearity);
}

TEST(FromCorrelationsTest, CorrelationOnlySummaryHasNoScale) {
  const GeometricSummary s =
      FromCorrelations(testing::MortalityTheta(), testing::MortalityOmega(), 53);
  EXPECT_TRUE(s.correlation_only());
  EXPECT_EQ(CodeOf([&] { s.y_norm(); }), ErrorCode::kMissingNorms);
  EXPECT_EQ(CodeOf([&] { s.x_norms(); }), ErrorCode::kMissingNorms);
  EXPECT_EQ(CodeOf([&] { s.y_mean(); }), ErrorCode::kMissingData);
  EXPECT_EQ(s.residual_df(), 48u);
}

// Smallest root of det(Φ - λI) for a 3×3 symmetric Φ, by bisection on the
// characteristic polynomial written out in full.
double SmallestRootOfCharacteristic(const Matrix& a) {
  auto p = [&](double l) {
    const double a00 = a(0, 0) - l, a11 = a(1, 1) - l, a22 = a(2, 2) - l;
    return a00 * (a11 * a22 - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a22 - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a11 * a(2, 0));
  };
  // p(λ) → +∞ as λ → -∞; scan upward for the first sign change.
  double lo = -10.0;
  double hi = lo;
  while (p(hi + 1e-3) > 0.0) hi += 1e-3;
  lo = hi;
  hi += 1e-3;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(FromCorrelationsTest, RejectsNonPsdStructure) {
  // Every pair is a valid correlation, but y cannot correlate 0.9 with x1 and
  // only 0.1 with x2 when x1 and x2 correlate 0.9.
  const Matrix theta{{1.0, 0.9}, {0.9, 1.0}};
  const Vector omega{0.9, 0.1};
  EXPECT_EQ(CodeOf([&] { FromCorrelations(theta, omega, 20); }),
            ErrorCode::kInvalidCorrelation);

  const Matrix phi = AssembleCorrelation(omega, theta);
  const double lambda_min = SmallestRootOfCharacteristic(phi);
  EXPECT_LT(lambda_min, 0.0);
  EXPECT_NEAR(MinEigenvalue(phi), lambda_min, 1e-10);
  const ValidationReport report = ValidateCorrelationMatrix(phi);
  EXPECT_TRUE(report.Has(ViolationKind::kNegativeEigenvalue));
  EXPECT_NE(report.Describe().find("negative-eigenvalue"), std::string::npos);
}

TEST(FromCorrelationsTest, ShapeAndCollinearity) {
  EXPECT_EQ(CodeOf([] {
              FromCorrelations(Matrix{{1.0, 0.2}, {0.3, 1.0}}, Vector{0.1, 0.1}, 10);
            }),
            ErrorCode::kShape);
  EXPECT_EQ(CodeOf([] {
              FromCorrelations(Matrix{{1.0, 1.0}, {1.0, 1.0}}, Vector{0.5, 0.5}, 10);
            }),
            ErrorCode::kCollinearity);
  EXPECT_EQ(CodeOf([] {
              FromCorrelations(Matrix{{1.0}}, Vector{0.5}, 10, 1.0, Vector{-1.0});
            }),
            ErrorCode::kDegenerateVariable);
}

TEST(ValidateTest, ListsEveryViolation) {
  const Matrix phi{{1.0, 1.2, 0.1}, {1.2, 0.9, 0.0}, {0.3, 0.0, 1.0}};
  const ValidationReport report = ValidateCorrelationMatrix(phi);
  EXPECT_TRUE(report.Has(ViolationKind::kAsymmetric));
  EXPECT_TRUE(report.Has(ViolationKind::kNonUnitDiagonal));
  EXPECT_TRUE(report.Has(ViolationKind::kOutOfRange));
  EXPECT_TRUE(ValidateCorrelationMatrix(Matrix(2, 3)).Has(ViolationKind::kNotSquare));
  EXPECT_TRUE(ValidateCorrelationMatrix(Matrix::Identity(4)).valid());
}

TEST(PartitionTest, RoundTrip) {
  const Matrix phi = AssembleCorrelation(testing::MortalityOmega(), testing::MortalityTheta());
  EXPECT_EQ(phi(0, 0), 1.0);
  EXPECT_EQ(phi(0, 3), -0.1720);
  EXPECT_EQ(phi(3, 0), -0.1720);
  const Partition p = PartitionCorrelation(phi);
  EXPECT_EQ(p.omega, testing::MortalityOmega());
  EXPECT_EQ(p.theta, testing::MortalityTheta());
  EXPECT_EQ(CodeOf([] { PartitionCorrelation(Matrix{{1.0}}); }), ErrorCode::kNoExplanatory);
}

// Shift and positive scaling of individual variables leave every angle alone.
TEST(SummaryInvarianceTest, AffineTransformsOfColumns) {
  std::mt19937_64 rng(21);
  const testing::RandomProblem p = testing::MakeRandomProblem(40, 3, rng);
  const GeometricSummary base = Summarize(p.y, p.xs);
  std::vector<Vector> moved;
  const double factors[] = {1e-4, 3.0, 2e5};
  for (std::size_t j = 0; j < p.xs.size(); ++j) {
    Vector x(p.xs[j].size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors[j] * p.xs[j][i] - 17.0;
    moved.push_back(x);
  }
  const GeometricSummary s = Summarize(Scale(p.y, 0.01), moved);
  // The shift loses a few digits when it dwarfs the spread of a column.
  EXPECT_LT(MaxAbsDifference(s.omega(), base.omega()), 1e-9);
  EXPECT_LT(MaxAbsDifference(s.theta(), base.theta()), 1e-9);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(s.x_norms()[j] / base.x_norms()[j], factors[j], 1e-9 * factors[j]);
  }
}

TEST(SummaryInvarianceTest, RotationFixingConstantVector) {
  std::mt19937_64 rng(23);
  const testing::RandomProblem p = testing::MakeRandomProblem(25, 4, rng);
  const Matrix q = testing::RandomOrthogonalFixingOnes(25, rng);
  std::vector<Vector> rotated;
  for (const Vector& x : p.xs) rotated.push_back(Multiply(q, x));
  const GeometricSummary a = Summarize(p.y, p.xs);
  const GeometricSummary b = Summarize(Multiply(q, p.y), rotated);
  EXPECT_LT(MaxAbsDifference(a.Phi(), b.Phi()), 1e-9);
  EXPECT_NEAR(a.y_norm(), b.y_norm(), 1e-9 * a.y_norm());
  EXPECT_NEAR(a.y_mean(), b.y_mean(), 1e-9 * std::abs(a.y_mean()));
}

TEST(SummaryPropertyTest, TraceAndInterlacing) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> m_dist(1, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = static_cast<std::size_t>(m_dist(rng));
    const testing::RandomProblem p = testing::MakeRandomProblem(30 + m, m, rng);
    const GeometricSummary s = Summarize(p.y, p.xs);
    double trace = 0.0;
    for (std::size_t i = 0; i < m; ++i) trace += s.theta()(i, i);
    EXPECT_DOUBLE_EQ(trace, static_cast<double>(m));

    // Θ is a principal submatrix of Φ, so λ_k(Φ) ≥ λ_k(Θ) ≥ λ_{k+1}(Φ).
    const Vector outer = SymmetricEigen(s.Phi()).values;
    const Vector inner = SymmetricEigen(s.theta()).values;
    for (std::size_t k = 0; k < m; ++k) {
      EXPECT_GE(outer[k] + 1e-12, inner[k]);
      EXPECT_GE(inner[k] + 1e-12, outer[k + 1]);
    }
    EXPECT_GT(MinEigenvalue(s.Phi()), -1e-9 * static_cast<double>(m));
  }
}

}  // namespace
}  // namespace georeg
