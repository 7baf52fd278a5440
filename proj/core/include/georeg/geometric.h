#ifndef GEOREG_GEOMETRIC_H_
#define GEOREG_GEOMETRIC_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "georeg/linalg.h"
#include "georeg/ols.h"
#include "georeg/summary.h"

namespace georeg {

// Quadratic forms in (1, 1 + kRSquaredSlack] are clamped to 1 with a warning;
// anything larger means the correlations are mutually inconsistent.
inline constexpr double kRSquaredSlack = 1e-9;

// Regression output computed from lengths and angles only.
class GeometricFit {
 public:
  double r_squared() const { return r_squared_; }
  // +infinity for a perfect fit.
  double f_stat() const { return f_stat_; }
  double p_value() const { return p_value_; }
  bool perfect_fit() const;

  std::size_t df_tot() const { return df_tot_; }
  std::size_t df_reg() const { return df_reg_; }
  std::size_t df_res() const { return df_res_; }

  // Θ⁻¹Ω: the standardized coefficients.
  const Vector& standardized_coefficients() const { return standardized_; }

  bool scale_free_only() const { return !anova_.has_value(); }

  // Scale-dependent outputs; throw kMissingNorms on a correlation-only fit.
  const Vector& beta_hat() const;
  const AnovaTable& anova() const;
  // Intercept; 0 without intercept, kMissingData when means are unknown.
  double beta0_hat() const;
  bool has_intercept_estimate() const { return beta0_.has_value(); }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend GeometricFit FitGeometric(const GeometricSummary&);

  double r_squared_ = 0.0;
  double f_stat_ = 0.0;
  double p_value_ = 1.0;
  std::size_t df_tot_ = 0;
  std::size_t df_reg_ = 0;
  std::size_t df_res_ = 0;
  Vector standardized_;
  std::optional<Vector> beta_;
  std::optional<double> beta0_;
  std::optional<AnovaTable> anova_;
  std::vector<std::string> warnings_;
};

// Errors: kCollinearity when Θ is singular; kInvalidCorrelation when
// ΩᵀΘ⁻¹Ω exceeds 1 + kRSquaredSlack.
GeometricFit FitGeometric(const GeometricSummary& summary);

// R² of the regression on the explanatory variables in `subset` (0-based
// indices into the summary). Errors: kEmptySubset, kDimension (index out of
// range or repeated), kCollinearity.
double RSquaredSubset(const GeometricSummary& summary,
                      std::span<const std::size_t> subset);

struct FieldComparison {
  std::string field;
  double ols = 0.0;
  double geometric = 0.0;
  double relative = 0.0;

  bool operator==(const FieldComparison&) const = default;
};

struct EquivalenceReport {
  static constexpr double kTolerance = 1e-8;

  std::vector<FieldComparison> fields;
  double max_relative = 0.0;
  bool passed() const { return max_relative <= kTolerance; }
};

// Fits the raw data by classical least squares and by the geometric formulas
// applied to Summarize(y, xs), then compares them field by field.
EquivalenceReport ComparePaths(const Vector& y, std::span<const Vector> xs,
                               const SummaryOptions& options = {});

}  // namespace georeg

#endif  // GEOREG_GEOMETRIC_H_
