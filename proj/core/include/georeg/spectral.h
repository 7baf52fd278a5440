#ifndef GEOREG_SPECTRAL_H_
#define GEOREG_SPECTRAL_H_

#include <span>
#include <vector>

#include "georeg/eigen.h"
#include "georeg/linalg.h"
#include "georeg/summary.h"

namespace georeg {

inline constexpr double kEnhancementThreshold = 1e-12;

// Contribution of each principal component of the design correlation matrix
// to the coefficient of determination.
struct SpectralReport {
  Vector eigenvalues;  // descending
  Matrix eigenvectors;  // columns, first significant entry positive
  Vector s_values;      // S_k = (Ω·v_k) / sqrt(λ_k)
  Vector contributions;  // S_k²
  double r_squared = 0.0;  // Σ S_k²
  double sum_squared_correlations = 0.0;  // ‖Ω‖²
  Vector enhancement_terms;  // (1 - λ_k) S_k²
  double enhancement_difference = 0.0;  // Σ (1 - λ_k) S_k²
  // ΩᵀΘ⁻¹Ω - ‖Ω‖² from the quadratic form, as a cross-check.
  double direct_difference = 0.0;
  bool enhancement = false;
};

struct Enhancement {
  double difference = 0.0;
  Vector per_component;
  bool flag = false;
  double direct_difference = 0.0;
};

// Eigendecomposition of Θ with descending eigenvalues.
EigenDecomposition DecomposeDesign(const Matrix& theta);

// S_k for each eigenpair. Errors: kCollinearity when any λ_k is below
// kCollinearityThreshold, kDimension on size mismatch.
Vector PrincipalComponentCorrelations(const GeometricSummary& summary,
                                      const EigenDecomposition& eig);

Enhancement ComputeEnhancement(const GeometricSummary& summary);

SpectralReport AnalyzeSpectrum(const GeometricSummary& summary);

// R² for two regressors in closed form:
//   (R₁² + R₂² - 2 R₁₂ R₁ R₂) / (1 - R₁₂²).
// Errors: kDomain for |r| > 1, kCollinearity for |r12| = 1,
// kInvalidCorrelation when the triple is not a valid correlation structure.
double TwoVariableRSquared(double r1, double r2, double r12);

// Same quantity via the eigenvectors (1, ±1)/√2 of the 2×2 design matrix:
//   (R₁ - R₂)² / (2(1 - R₁₂)) + (R₁ + R₂)² / (2(1 + R₁₂)).
double TwoVariableRSquaredSpectral(double r1, double r2, double r12);

// z_k = x̂ v_k from raw explanatory vectors, which are centered (when
// `options.intercept`) and normalized first. Errors: kMissingData when `xs`
// is empty, kDimension when its size disagrees with `eig`.
std::vector<Vector> PrincipalComponents(std::span<const Vector> xs,
                                        const EigenDecomposition& eig,
                                        const SummaryOptions& options = {});

}  // namespace georeg

#endif  // GEOREG_SPECTRAL_H_
