#ifndef GEOREG_OLS_H_
#define GEOREG_OLS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "georeg/linalg.h"
#include "georeg/summary.h"

namespace georeg {

// 1 - R² below this is reported as a perfect fit: F is infinite and p = 0.
inline constexpr double kPerfectFitTolerance = 1e-12;

struct AnovaTable {
  double ss_tot = 0.0;
  double ss_reg = 0.0;
  double ss_res = 0.0;
  std::size_t df_tot = 0;
  std::size_t df_reg = 0;
  std::size_t df_res = 0;
  double ms_tot = 0.0;
  double ms_reg = 0.0;
  double ms_res = 0.0;
  double sigma2_y_hat = 0.0;  // MS_Tot
  double sigma2_hat = 0.0;    // MS_Res
  double r_squared = 0.0;
  // +infinity for a perfect fit; serializers must special-case it.
  double f_stat = 0.0;
  double p_value = 1.0;

  bool perfect_fit() const;
  bool operator==(const AnovaTable&) const = default;
};

// ANOVA from the sums of squares of a fit with n observations and m
// regressors: R² = SS_Reg / SS_Tot, F = MS_Reg / MS_Res.
AnovaTable MakeAnovaTable(std::size_t n, std::size_t m, bool intercept, double ss_tot,
                          double ss_reg, double ss_res);

// Centered (or raw, without intercept) design matrix together with a
// factorization of its Gram matrix. Hat and annihilator are applied
// matrix-free.
class Design {
 public:
  Design(std::span<const Vector> xs, const SummaryOptions& options = {});

  std::size_t n() const { return columns_.rows(); }
  std::size_t m() const { return columns_.cols(); }
  bool intercept() const { return intercept_; }
  const Matrix& columns() const { return columns_; }
  const Vector& means() const { return means_; }

  // β̂ = (xᵀx)⁻¹xᵀv.
  Vector Coefficients(const Vector& v) const;
  // hv = x(xᵀx)⁻¹xᵀv.
  Vector HatApply(const Vector& v) const;
  // av = v - hv.
  Vector AnnihilatorApply(const Vector& v) const;
  // Explicit n×n hat matrix; O(n²) memory, intended for small diagnostics.
  Matrix ExplicitHat() const;

 private:
  bool intercept_;
  Vector means_;
  Matrix columns_;
  // Gram matrix is factored after scaling by 1/‖x_i‖ on both sides.
  Vector scale_;
  Cholesky gram_;
};

struct RegressionFit {
  Vector beta_hat;
  double beta0_hat = 0.0;
  Vector fitted;
  Vector residuals;
  // Response as regressed: centered, or raw without intercept.
  Vector response;
  AnovaTable anova;
};

// Classical least squares on the raw vectors. Errors mirror Summarize:
// kDimension, kNoExplanatory, kInsufficientData, kDegenerateVariable,
// kCollinearity.
RegressionFit FitOls(const Vector& y, std::span<const Vector> xs,
                     const SummaryOptions& options = {});

}  // namespace georeg

#endif  // GEOREG_OLS_H_
