#include "georeg/summary.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "georeg/eigen.h"
#include "georeg/error.h"

namespace georeg {

namespace {

std::string FormatValue(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void CheckThetaPositiveDefinite(const Matrix& theta) {
  const double min_eig = MinEigenvalue(theta);
  if (min_eig < kCollinearityThreshold) {
    throw Error(ErrorCode::kCollinearity,
                "explanatory variables are collinear (smallest eigenvalue of "
                "the design correlation matrix is " +
                    FormatValue(min_eig) + ")");
  }
}

void CheckDegreesOfFreedom(std::size_t n, std::size_t m, bool intercept) {
  const std::size_t needed = m + (intercept ? 2 : 1);
  if (n < needed) {
    throw Error(ErrorCode::kInsufficientData,
                "need at least " + std::to_string(needed) + " observations for " +
                    std::to_string(m) + " explanatory variables, got " +
                    std::to_string(n));
  }
}

}  // namespace

double GeometricSummary::y_norm() const {
  if (!y_norm_) throw Error(ErrorCode::kMissingNorms, "summary has no vector lengths");
  return *y_norm_;
}

const Vector& GeometricSummary::x_norms() const {
  if (!x_norms_) throw Error(ErrorCode::kMissingNorms, "summary has no vector lengths");
  return *x_norms_;
}

double GeometricSummary::y_mean() const {
  if (!y_mean_) throw Error(ErrorCode::kMissingData, "summary has no stored means");
  return *y_mean_;
}

const Vector& GeometricSummary::x_means() const {
  if (!x_means_) throw Error(ErrorCode::kMissingData, "summary has no stored means");
  return *x_means_;
}

Matrix GeometricSummary::Phi() const { return AssembleCorrelation(omega_, theta_); }

std::size_t GeometricSummary::residual_df() const {
  return n_ - m() - (intercept_ ? 1 : 0);
}

std::size_t GeometricSummary::total_df() const { return n_ - (intercept_ ? 1 : 0); }

GeometricSummary Summarize(const Vector& y, std::span<const Vector> xs,
                           const SummaryOptions& options) {
  const std::size_t m = xs.size();
  if (m == 0) throw Error(ErrorCode::kNoExplanatory, "no explanatory variables");
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (xs[i].size() != n) {
      throw Error(ErrorCode::kDimension,
                  "explanatory variable " + std::to_string(i + 1) + " has length " +
                      std::to_string(xs[i].size()) + ", response has " +
                      std::to_string(n),
                  i + 1);
    }
  }
  CheckDegreesOfFreedom(n, m, options.intercept);

  GeometricSummary s;
  s.n_ = n;
  s.intercept_ = options.intercept;

  Vector yc = y;
  std::vector<Vector> xc(xs.begin(), xs.end());
  if (options.intercept) {
    CenterResult cy = Center(y);
    yc = std::move(cy.centered);
    Vector means(m);
    for (std::size_t i = 0; i < m; ++i) {
      CenterResult cx = Center(xs[i]);
      xc[i] = std::move(cx.centered);
      means[i] = cx.mean;
    }
    s.y_mean_ = cy.mean;
    s.x_means_ = std::move(means);
  }

  // A column is degenerate when centering leaves only rounding residue.
  auto degenerate = [](const Vector& raw, const Vector& centered) {
    double scale = 0.0;
    for (double v : raw) scale = std::max(scale, std::abs(v));
    const double norm = Norm(centered);
    return norm == 0.0 ||
           norm <= 1e-14 * scale * std::sqrt(static_cast<double>(raw.size()));
  };
  if (degenerate(y, yc)) {
    throw Error(ErrorCode::kDegenerateVariable,
                "response has zero length after centering (constant column)", 0);
  }
  Vector norms(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (degenerate(xs[i], xc[i])) {
      throw Error(ErrorCode::kDegenerateVariable,
                  "explanatory variable " + std::to_string(i + 1) +
                      " has zero length after centering (constant column)",
                  i + 1);
    }
    norms[i] = Norm(xc[i]);
  }

  Vector omega(m);
  Matrix theta = Matrix::Identity(m);
  for (std::size_t i = 0; i < m; ++i) {
    omega[i] = Cosine(yc, xc[i]);
    for (std::size_t k = i + 1; k < m; ++k) {
      const double r = Cosine(xc[i], xc[k]);
      theta(i, k) = r;
      theta(k, i) = r;
    }
  }
  CheckThetaPositiveDefinite(theta);

  s.omega_ = std::move(omega);
  s.theta_ = std::move(theta);
  s.y_norm_ = Norm(yc);
  s.x_norms_ = std::move(norms);
  return s;
}

GeometricSummary FromCorrelations(const Matrix& theta, const Vector& omega,
                                  std::size_t n, std::optional<double> y_norm,
                                  std::optional<Vector> x_norms,
                                  const SummaryOptions& options) {
  const std::size_t m = omega.size();
  if (m == 0) throw Error(ErrorCode::kNoExplanatory, "no explanatory variables");
  if (theta.rows() != m || theta.cols() != m) {
    throw Error(ErrorCode::kShape, "design correlation matrix must be " +
                                       std::to_string(m) + "x" + std::to_string(m));
  }
  if (!IsSymmetric(theta, kCorrelationShapeTolerance)) {
    throw Error(ErrorCode::kShape, "design correlation matrix is not symmetric");
  }
  if (y_norm.has_value() != x_norms.has_value()) {
    throw Error(ErrorCode::kMissingNorms,
                "response and explanatory lengths must be supplied together");
  }
  if (x_norms && x_norms->size() != m) {
    throw Error(ErrorCode::kDimension, "expected " + std::to_string(m) +
                                           " explanatory lengths, got " +
                                           std::to_string(x_norms->size()));
  }
  if (y_norm && !(*y_norm > 0.0)) {
    throw Error(ErrorCode::kDegenerateVariable, "response has non-positive length", 0);
  }
  if (x_norms) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!((*x_norms)[i] > 0.0)) {
        throw Error(ErrorCode::kDegenerateVariable,
                    "explanatory variable " + std::to_string(i + 1) +
                        " has non-positive length",
                    i + 1);
      }
    }
  }
  CheckDegreesOfFreedom(n, m, options.intercept);

  const ValidationReport report =
      ValidateCorrelationMatrix(AssembleCorrelation(omega, theta));
  if (!report.valid()) {
    throw Error(ErrorCode::kInvalidCorrelation,
                "invalid correlation structure: " + report.Describe());
  }

  Matrix clean = Matrix::Identity(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      const double r = 0.5 * (theta(i, k) + theta(k, i));
      clean(i, k) = r;
      clean(k, i) = r;
    }
  }
  CheckThetaPositiveDefinite(clean);

  GeometricSummary s;
  s.n_ = n;
  s.intercept_ = options.intercept;
  s.omega_ = omega;
  s.theta_ = std::move(clean);
  s.y_norm_ = y_norm;
  s.x_norms_ = std::move(x_norms);
  return s;
}

const char* ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNotSquare: return "not-square";
    case ViolationKind::kAsymmetric: return "asymmetric";
    case ViolationKind::kNonUnitDiagonal: return "non-unit-diagonal";
    case ViolationKind::kOutOfRange: return "out-of-range-entry";
    case ViolationKind::kNegativeEigenvalue: return "negative-eigenvalue";
  }
  return "unknown";
}

bool ValidationReport::Has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::Describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << ViolationKindName(violations[i].kind) << ": " << violations[i].message;
  }
  return out.str();
}

ValidationReport ValidateCorrelationMatrix(const Matrix& phi) {
  ValidationReport report;
  if (!phi.square() || phi.rows() == 0) {
    report.violations.push_back({ViolationKind::kNotSquare, phi.rows(), phi.cols(), 0.0,
                                 "matrix is " + std::to_string(phi.rows()) + "x" +
                                     std::to_string(phi.cols())});
    return report;
  }
  const std::size_t dim = phi.rows();
  bool symmetric = true;
  for (std::size_t r = 0; r < dim; ++r) {
    if (std::abs(phi(r, r) - 1.0) > kCorrelationShapeTolerance) {
      report.violations.push_back({ViolationKind::kNonUnitDiagonal, r, r, phi(r, r),
                                   "diagonal entry (" + std::to_string(r) + "," +
                                       std::to_string(r) + ") = " +
                                       FormatValue(phi(r, r))});
    }
    for (std::size_t c = r + 1; c < dim; ++c) {
      if (std::abs(phi(r, c) - phi(c, r)) > kCorrelationShapeTolerance) {
        symmetric = false;
        report.violations.push_back(
            {ViolationKind::kAsymmetric, r, c, phi(r, c) - phi(c, r),
             "entries (" + std::to_string(r) + "," + std::to_string(c) + ") and (" +
                 std::to_string(c) + "," + std::to_string(r) + ") differ"});
      }
      for (double v : {phi(r, c), phi(c, r)}) {
        if (std::abs(v) > 1.0) {
          report.violations.push_back({ViolationKind::kOutOfRange, r, c, v,
                                       "entry (" + std::to_string(r) + "," +
                                           std::to_string(c) + ") = " + FormatValue(v) +
                                           " lies outside [-1, 1]"});
          break;
        }
      }
    }
  }
  if (symmetric) {
    const double min_eig = MinEigenvalue(phi);
    const double tolerance =
        kPsdTolerancePerVariable * static_cast<double>(std::max<std::size_t>(dim - 1, 1));
    if (min_eig < -tolerance) {
      report.violations.push_back({ViolationKind::kNegativeEigenvalue, 0, 0, min_eig,
                                   "smallest eigenvalue is " + FormatValue(min_eig)});
    }
  }
  return report;
}

Partition PartitionCorrelation(const Matrix& phi) {
  if (!phi.square()) throw Error(ErrorCode::kShape, "correlation matrix must be square");
  if (phi.rows() < 2) {
    throw Error(ErrorCode::kNoExplanatory,
                "correlation matrix has no explanatory variables");
  }
  const std::size_t m = phi.rows() - 1;
  Partition p{Vector(m), Matrix(m, m)};
  for (std::size_t i = 0; i < m; ++i) {
    p.omega[i] = phi(i + 1, 0);
    for (std::size_t k = 0; k < m; ++k) p.theta(i, k) = phi(i + 1, k + 1);
  }
  return p;
}

Matrix AssembleCorrelation(const Vector& omega, const Matrix& theta) {
  const std::size_t m = omega.size();
  if (theta.rows() != m || theta.cols() != m) {
    throw Error(ErrorCode::kShape, "goodness-of-fit vector and design matrix disagree");
  }
  Matrix phi(m + 1, m + 1);
  phi(0, 0) = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    phi(0, i + 1) = omega[i];
    phi(i + 1, 0) = omega[i];
    for (std::size_t k = 0; k < m; ++k) phi(i + 1, k + 1) = theta(i, k);
  }
  return phi;
}

}  // namespace georeg
