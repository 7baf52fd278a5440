#include "georeg/spectral.h"

#include <cmath>
#include <string>

#include "georeg/error.h"
#include "georeg/geometric.h"

namespace georeg {

namespace {

void CheckCorrelation(double r, const char* name) {
  if (!std::isfinite(r) || std::abs(r) > 1.0) {
    throw Error(ErrorCode::kDomain, std::string(name) + " must lie in [-1, 1]");
  }
}

void CheckTriple(double r1, double r2, double r12) {
  CheckCorrelation(r1, "R1");
  CheckCorrelation(r2, "R2");
  CheckCorrelation(r12, "R12");
  if (std::abs(r12) >= 1.0) {
    throw Error(ErrorCode::kCollinearity, "explanatory variables are perfectly correlated");
  }
  // det Φ = 1 - R₁² - R₂² - R₁₂² + 2 R₁ R₂ R₁₂; with |R₁₂| < 1 this is the
  // only remaining PSD condition.
  const double det = 1.0 - r1 * r1 - r2 * r2 - r12 * r12 + 2.0 * r1 * r2 * r12;
  if (det < -kPsdTolerancePerVariable * 2.0) {
    throw Error(ErrorCode::kInvalidCorrelation,
                "correlation triple is infeasible (determinant " + std::to_string(det) +
                    ")");
  }
}

}  // namespace

EigenDecomposition DecomposeDesign(const Matrix& theta) { return SymmetricEigen(theta); }

Vector PrincipalComponentCorrelations(const GeometricSummary& summary,
                                      const EigenDecomposition& eig) {
  const std::size_t m = summary.m();
  if (eig.values.size() != m || eig.vectors.rows() != m || eig.vectors.cols() != m) {
    throw Error(ErrorCode::kDimension, "eigendecomposition does not match the summary");
  }
  Vector s(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double lambda = eig.values[k];
    if (lambda < kCollinearityThreshold) {
      throw Error(ErrorCode::kCollinearity,
                  "eigenvalue " + std::to_string(k + 1) + " is not positive", k);
    }
    s[k] = Dot(summary.omega(), eig.EigenVector(k)) / std::sqrt(lambda);
  }
  return s;
}

Enhancement ComputeEnhancement(const GeometricSummary& summary) {
  const SpectralReport report = AnalyzeSpectrum(summary);
  return {report.enhancement_difference, report.enhancement_terms, report.enhancement,
          report.direct_difference};
}

SpectralReport AnalyzeSpectrum(const GeometricSummary& summary) {
  const std::size_t m = summary.m();
  SpectralReport r;
  const EigenDecomposition eig = DecomposeDesign(summary.theta());
  r.eigenvalues = eig.values;
  r.eigenvectors = eig.vectors;
  r.s_values = PrincipalComponentCorrelations(summary, eig);
  r.contributions = Vector(m);
  r.enhancement_terms = Vector(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double s2 = r.s_values[k] * r.s_values[k];
    r.contributions[k] = s2;
    r.enhancement_terms[k] = (1.0 - eig.values[k]) * s2;
    r.r_squared += s2;
    r.enhancement_difference += r.enhancement_terms[k];
  }
  r.sum_squared_correlations = Dot(summary.omega(), summary.omega());
  std::vector<std::size_t> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  r.direct_difference = RSquaredSubset(summary, all) - r.sum_squared_correlations;
  r.enhancement = r.enhancement_difference > kEnhancementThreshold;
  return r;
}

double TwoVariableRSquared(double r1, double r2, double r12) {
  CheckTriple(r1, r2, r12);
  return (r1 * r1 + r2 * r2 - 2.0 * r12 * r1 * r2) / (1.0 - r12 * r12);
}

double TwoVariableRSquaredSpectral(double r1, double r2, double r12) {
  CheckTriple(r1, r2, r12);
  const double diff = r1 - r2;
  const double sum = r1 + r2;
  return diff * diff / (2.0 * (1.0 - r12)) + sum * sum / (2.0 * (1.0 + r12));
}

std::vector<Vector> PrincipalComponents(std::span<const Vector> xs,
                                        const EigenDecomposition& eig,
                                        const SummaryOptions& options) {
  if (xs.empty()) {
    throw Error(ErrorCode::kMissingData,
                "principal components need the raw explanatory vectors");
  }
  const std::size_t m = xs.size();
  if (eig.values.size() != m || eig.vectors.rows() != m) {
    throw Error(ErrorCode::kDimension, "eigendecomposition does not match the design");
  }
  std::vector<Vector> normed;
  normed.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vector v = options.intercept ? Center(xs[i]).centered : xs[i];
    const double len = Norm(v);
    if (len == 0.0) {
      throw Error(ErrorCode::kDegenerateVariable,
                  "explanatory variable " + std::to_string(i + 1) + " has zero length",
                  i + 1);
    }
    normed.push_back(Scale(v, 1.0 / len));
  }
  const Matrix x_hat = Matrix::FromColumns(normed);
  std::vector<Vector> components;
  components.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    components.push_back(Multiply(x_hat, eig.EigenVector(k)));
  }
  return components;
}

}  // namespace georeg
