#include "georeg/geometric.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "georeg/error.h"
#include "georeg/special_functions.h"

namespace georeg {

namespace {

struct QuadraticForm {
  Vector solution;  // Θ⁻¹Ω
  double value = 0.0;
};

// ΩᵀΘ⁻¹Ω by Cholesky solve, clamped into [0, 1].
QuadraticForm RSquaredForm(const Matrix& theta, const Vector& omega,
                           std::vector<std::string>* warnings) {
  QuadraticForm q;
  try {
    q.solution = SolveSpd(theta, omega);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularMatrix) throw;
    throw Error(ErrorCode::kCollinearity,
                "design correlation matrix is singular (pivot " +
                    std::to_string(e.index().value_or(0)) + ")",
                e.index());
  }
  const double raw = Dot(omega, q.solution);
  if (raw > 1.0 + kRSquaredSlack) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "coefficient of determination %.12g exceeds 1", raw);
    throw Error(ErrorCode::kInvalidCorrelation, buf);
  }
  if (raw > 1.0) {
    if (warnings != nullptr) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "coefficient of determination %.12g clamped to 1", raw);
      warnings->emplace_back(buf);
    }
    q.value = 1.0;
  } else {
    q.value = std::max(raw, 0.0);
  }
  return q;
}

double Relative(double a, double b, double scale) {
  if (a == b) return 0.0;  // also covers matching infinities
  if (std::isinf(a) || std::isinf(b)) return std::numeric_limits<double>::infinity();
  const double denom = std::max({std::abs(a), std::abs(b), scale,
                                 std::numeric_limits<double>::min()});
  return std::abs(a - b) / denom;
}

}  // namespace

bool GeometricFit::perfect_fit() const { return std::isinf(f_stat_); }

const Vector& GeometricFit::beta_hat() const {
  if (!beta_) {
    throw Error(ErrorCode::kMissingNorms,
                "coefficient estimates need vector lengths (correlation-only input)");
  }
  return *beta_;
}

const AnovaTable& GeometricFit::anova() const {
  if (!anova_) {
    throw Error(ErrorCode::kMissingNorms,
                "sums of squares need vector lengths (correlation-only input)");
  }
  return *anova_;
}

double GeometricFit::beta0_hat() const {
  if (!beta0_) throw Error(ErrorCode::kMissingData, "intercept needs the variable means");
  return *beta0_;
}

GeometricFit FitGeometric(const GeometricSummary& summary) {
  GeometricFit fit;
  const std::size_t m = summary.m();
  QuadraticForm q = RSquaredForm(summary.theta(), summary.omega(), &fit.warnings_);
  const double r2 = q.value;
  const double unexplained = 1.0 - r2;

  fit.r_squared_ = r2;
  fit.standardized_ = q.solution;
  fit.df_tot_ = summary.total_df();
  fit.df_reg_ = m;
  fit.df_res_ = summary.residual_df();

  const double df_res = static_cast<double>(fit.df_res_);
  const double df_reg = static_cast<double>(fit.df_reg_);
  if (unexplained < kPerfectFitTolerance) {
    fit.f_stat_ = std::numeric_limits<double>::infinity();
    fit.p_value_ = 0.0;
  } else {
    fit.f_stat_ = (df_res / df_reg) * r2 / unexplained;
    fit.p_value_ = FSurvival(fit.f_stat_, {df_reg, df_res});
  }

  if (!summary.has_norms()) return fit;

  const double y_norm = summary.y_norm();
  const Vector& x_norms = summary.x_norms();
  Vector beta(m);
  for (std::size_t k = 0; k < m; ++k) beta[k] = (y_norm / x_norms[k]) * q.solution[k];

  if (!summary.intercept()) {
    fit.beta0_ = 0.0;
  } else if (summary.has_means()) {
    double b0 = summary.y_mean();
    for (std::size_t k = 0; k < m; ++k) b0 -= beta[k] * summary.x_means()[k];
    fit.beta0_ = b0;
  }
  fit.beta_ = std::move(beta);

  const double y2 = y_norm * y_norm;
  AnovaTable t;
  t.df_tot = fit.df_tot_;
  t.df_reg = fit.df_reg_;
  t.df_res = fit.df_res_;
  t.ss_tot = y2;
  t.ss_reg = y2 * r2;
  t.ss_res = y2 * unexplained;
  t.ms_tot = y2 / static_cast<double>(t.df_tot);
  t.ms_reg = y2 * r2 / df_reg;
  t.ms_res = y2 * unexplained / df_res;
  t.sigma2_y_hat = t.ms_tot;
  t.sigma2_hat = t.ms_res;
  t.r_squared = r2;
  t.f_stat = fit.f_stat_;
  t.p_value = fit.p_value_;
  fit.anova_ = t;
  return fit;
}

double RSquaredSubset(const GeometricSummary& summary,
                      std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorCode::kEmptySubset, "subset is empty");
  std::set<std::size_t> seen;
  for (std::size_t idx : subset) {
    if (idx >= summary.m()) {
      throw Error(ErrorCode::kDimension,
                  "subset index " + std::to_string(idx) + " out of range", idx);
    }
    if (!seen.insert(idx).second) {
      throw Error(ErrorCode::kDimension,
                  "subset index " + std::to_string(idx) + " repeated", idx);
    }
  }
  Vector omega(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) omega[i] = summary.omega()[subset[i]];
  return RSquaredForm(summary.theta().Principal(subset), omega, nullptr).value;
}

EquivalenceReport ComparePaths(const Vector& y, std::span<const Vector> xs,
                               const SummaryOptions& options) {
  const RegressionFit ols = FitOls(y, xs, options);
  const GeometricSummary summary = Summarize(y, xs, options);
  const GeometricFit geo = FitGeometric(summary);
  const AnovaTable& a = ols.anova;
  const AnovaTable& g = geo.anova();

  EquivalenceReport report;
  auto add = [&](std::string name, double lhs, double rhs, double scale) {
    FieldComparison c{std::move(name), lhs, rhs, Relative(lhs, rhs, scale)};
    report.max_relative = std::max(report.max_relative, c.relative);
    report.fields.push_back(std::move(c));
  };
  auto add_count = [&](std::string name, std::size_t lhs, std::size_t rhs) {
    add(std::move(name), static_cast<double>(lhs), static_cast<double>(rhs), 0.0);
  };

  const double y_norm = summary.y_norm();
  for (std::size_t k = 0; k < summary.m(); ++k) {
    // A coefficient near zero is judged against its natural unit ‖y‖/‖x_k‖.
    add("beta_hat[" + std::to_string(k + 1) + "]", ols.beta_hat[k], geo.beta_hat()[k],
        1e-6 * y_norm / summary.x_norms()[k]);
  }
  if (options.intercept) {
    double scale = std::abs(summary.y_mean());
    for (std::size_t k = 0; k < summary.m(); ++k) {
      scale += std::abs(ols.beta_hat[k] * summary.x_means()[k]);
    }
    add("beta0_hat", ols.beta0_hat, geo.beta0_hat(), scale);
  }
  add("ss_tot", a.ss_tot, g.ss_tot, 0.0);
  add("ss_reg", a.ss_reg, g.ss_reg, 1e-12 * a.ss_tot);
  add("ss_res", a.ss_res, g.ss_res, 1e-12 * a.ss_tot);
  add_count("df_tot", a.df_tot, g.df_tot);
  add_count("df_reg", a.df_reg, g.df_reg);
  add_count("df_res", a.df_res, g.df_res);
  add("ms_tot", a.ms_tot, g.ms_tot, 0.0);
  add("ms_reg", a.ms_reg, g.ms_reg, 1e-12 * a.ms_tot);
  add("ms_res", a.ms_res, g.ms_res, 1e-12 * a.ms_tot);
  add("sigma2_y_hat", a.sigma2_y_hat, g.sigma2_y_hat, 0.0);
  add("sigma2_hat", a.sigma2_hat, g.sigma2_hat, 1e-12 * a.ms_tot);
  add("r_squared", a.r_squared, g.r_squared, 1e-12);
  add("f_stat", a.f_stat, g.f_stat, 1e-12);
  add("p_value", a.p_value, g.p_value, 0.0);
  return report;
}

}  // namespace georeg
