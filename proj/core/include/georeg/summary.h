#ifndef GEOREG_SUMMARY_H_
#define GEOREG_SUMMARY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "georeg/linalg.h"

namespace georeg {

// Minimum eigenvalue of the bordered correlation matrix accepted as PSD is
// -kPsdTolerancePerVariable * m.
inline constexpr double kPsdTolerancePerVariable = 1e-9;
// Θ with a smaller minimum eigenvalue is treated as collinear.
inline constexpr double kCollinearityThreshold = 1e-10;
// Absolute tolerance for symmetry and unit diagonal of supplied correlations.
inline constexpr double kCorrelationShapeTolerance = 1e-9;

struct SummaryOptions {
  // When false the inputs are used as given (regression through the origin):
  // no centering, df_tot = n, df_res = n - m.
  bool intercept = true;
};

// Sufficient statistics of a regression problem: lengths and angles.
// A summary built from correlations alone has no norms; asking it for a
// scale-dependent quantity throws kMissingNorms.
class GeometricSummary {
 public:
  std::size_t n() const { return n_; }
  std::size_t m() const { return omega_.size(); }
  bool intercept() const { return intercept_; }

  const Vector& omega() const { return omega_; }
  const Matrix& theta() const { return theta_; }

  bool has_norms() const { return y_norm_.has_value(); }
  bool correlation_only() const { return !has_norms(); }
  double y_norm() const;
  const Vector& x_norms() const;

  bool has_means() const { return y_mean_.has_value(); }
  double y_mean() const;
  const Vector& x_means() const;

  // Response-first bordered matrix [[1, Ωᵀ], [Ω, Θ]].
  Matrix Phi() const;

  // Residual degrees of freedom: n - m - 1 with intercept, n - m without.
  std::size_t residual_df() const;
  std::size_t total_df() const;

 private:
  friend GeometricSummary Summarize(const Vector&, std::span<const Vector>,
                                    const SummaryOptions&);
  friend GeometricSummary FromCorrelations(const Matrix&, const Vector&,
                                           std::size_t, std::optional<double>,
                                           std::optional<Vector>,
                                           const SummaryOptions&);

  std::size_t n_ = 0;
  bool intercept_ = true;
  Vector omega_;
  Matrix theta_;
  std::optional<double> y_norm_;
  std::optional<Vector> x_norms_;
  std::optional<double> y_mean_;
  std::optional<Vector> x_means_;
};

// Builds the summary from raw data. Errors: kDimension (length mismatch),
// kNoExplanatory, kInsufficientData, kDegenerateVariable (index = column,
// 0 for the response, i for x_i), kCollinearity.
GeometricSummary Summarize(const Vector& y, std::span<const Vector> xs,
                           const SummaryOptions& options = {});

// Builds a summary from Θ and Ω. Norms are optional but must be given
// together. Errors: kShape, kInvalidCorrelation, kCollinearity,
// kInsufficientData, kDegenerateVariable (non-positive norm; index as in
// Summarize).
GeometricSummary FromCorrelations(const Matrix& theta, const Vector& omega,
                                  std::size_t n,
                                  std::optional<double> y_norm = std::nullopt,
                                  std::optional<Vector> x_norms = std::nullopt,
                                  const SummaryOptions& options = {});

enum class ViolationKind {
  kNotSquare,
  kAsymmetric,
  kNonUnitDiagonal,
  kOutOfRange,
  kNegativeEigenvalue,
};

const char* ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool Has(ViolationKind kind) const;
  std::string Describe() const;
};

// Checks every property of a correlation matrix and lists each violation.
// Negative eigenvalues count only below -kPsdTolerancePerVariable * (dim - 1).
ValidationReport ValidateCorrelationMatrix(const Matrix& phi);

struct Partition {
  Vector omega;
  Matrix theta;
};

// Splits a response-first Φ into Ω and Θ. Errors: kNoExplanatory for 1×1,
// kShape for non-square input.
Partition PartitionCorrelation(const Matrix& phi);

// Inverse of PartitionCorrelation.
Matrix AssembleCorrelation(const Vector& omega, const Matrix& theta);

}  // namespace georeg

#endif  // GEOREG_SUMMARY_H_
