#include "georeg/ols.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "georeg/error.h"
#include "georeg/special_functions.h"

namespace georeg {

namespace {

Matrix BuildColumns(std::span<const Vector> xs, bool intercept, Vector& means) {
  if (xs.empty()) throw Error(ErrorCode::kNoExplanatory, "no explanatory variables");
  const std::size_t n = xs.front().size();
  if (n == 0) throw Error(ErrorCode::kDimension, "empty explanatory variable");
  means = Vector(xs.size());
  Matrix x(n, xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (xs[j].size() != n) {
      throw Error(ErrorCode::kDimension,
                  "explanatory variable " + std::to_string(j + 1) + " has length " +
                      std::to_string(xs[j].size()) + ", expected " + std::to_string(n),
                  j + 1);
    }
    const double mean = intercept ? Sum(xs[j]) / static_cast<double>(n) : 0.0;
    means[j] = mean;
    for (std::size_t i = 0; i < n; ++i) x(i, j) = xs[j][i] - mean;
  }
  return x;
}

Vector ColumnNorms(const Matrix& x, std::span<const Vector> raw) {
  Vector norms(x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const Vector col = x.Column(j);
    norms[j] = Norm(col);
    double scale = 0.0;
    for (double v : raw[j]) scale = std::max(scale, std::abs(v));
    if (norms[j] == 0.0 ||
        norms[j] <= 1e-14 * scale * std::sqrt(static_cast<double>(x.rows()))) {
      throw Error(ErrorCode::kDegenerateVariable,
                  "explanatory variable " + std::to_string(j + 1) +
                      " has zero length after centering (constant column)",
                  j + 1);
    }
  }
  return norms;
}

// Gram matrix of the column-equilibrated design, D xᵀx D with D = diag(1/‖x_j‖).
Matrix ScaledGram(const Matrix& x, const Vector& norms) {
  const std::size_t m = x.cols();
  Matrix gram(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      double sum = 0.0;
      for (std::size_t i = 0; i < x.rows(); ++i) {
        sum += (x(i, a) / norms[a]) * (x(i, b) / norms[b]);
      }
      gram(a, b) = sum;
      gram(b, a) = sum;
    }
  }
  return gram;
}

Cholesky FactorGram(const Matrix& gram) {
  try {
    return Cholesky(gram);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularMatrix) throw;
    throw Error(ErrorCode::kCollinearity,
                "explanatory variables are collinear (Gram matrix is singular at "
                "pivot " +
                    std::to_string(e.index().value_or(0)) + ")",
                e.index());
  }
}

}  // namespace

bool AnovaTable::perfect_fit() const { return std::isinf(f_stat); }

AnovaTable MakeAnovaTable(std::size_t n, std::size_t m, bool intercept, double ss_tot,
                          double ss_reg, double ss_res) {
  AnovaTable t;
  t.df_tot = n - (intercept ? 1 : 0);
  t.df_reg = m;
  t.df_res = t.df_tot - m;
  t.ss_reg = ss_reg;
  t.ss_res = ss_res;
  t.ss_tot = ss_tot;
  t.ms_tot = t.ss_tot / static_cast<double>(t.df_tot);
  t.ms_reg = t.ss_reg / static_cast<double>(t.df_reg);
  t.ms_res = t.ss_res / static_cast<double>(t.df_res);
  t.sigma2_y_hat = t.ms_tot;
  t.sigma2_hat = t.ms_res;
  t.r_squared = t.ss_tot > 0.0 ? std::clamp(t.ss_reg / t.ss_tot, 0.0, 1.0) : 0.0;
  if (t.ss_res <= kPerfectFitTolerance * t.ss_tot) {
    t.f_stat = std::numeric_limits<double>::infinity();
    t.p_value = 0.0;
  } else {
    t.f_stat = t.ms_reg / t.ms_res;
    t.p_value = FSurvival(t.f_stat, {static_cast<double>(t.df_reg),
                                     static_cast<double>(t.df_res)});
  }
  return t;
}

Design::Design(std::span<const Vector> xs, const SummaryOptions& options)
    : intercept_(options.intercept),
      columns_(BuildColumns(xs, options.intercept, means_)),
      scale_(ColumnNorms(columns_, xs)),
      gram_(FactorGram(ScaledGram(columns_, scale_))) {}

Vector Design::Coefficients(const Vector& v) const {
  Vector rhs = MultiplyTransposed(columns_, v);
  for (std::size_t j = 0; j < m(); ++j) rhs[j] /= scale_[j];
  Vector w = gram_.Solve(rhs);
  for (std::size_t j = 0; j < m(); ++j) w[j] /= scale_[j];
  return w;
}

Vector Design::HatApply(const Vector& v) const {
  return Multiply(columns_, Coefficients(v));
}

Vector Design::AnnihilatorApply(const Vector& v) const {
  return Subtract(v, HatApply(v));
}

Matrix Design::ExplicitHat() const {
  // h = x (xᵀx)⁻¹ xᵀ assembled column by column from h e_j.
  Matrix h(n(), n());
  for (std::size_t j = 0; j < n(); ++j) {
    Vector e(n());
    e[j] = 1.0;
    const Vector col = HatApply(e);
    for (std::size_t i = 0; i < n(); ++i) h(i, j) = col[i];
  }
  return h;
}

RegressionFit FitOls(const Vector& y, std::span<const Vector> xs,
                     const SummaryOptions& options) {
  if (xs.empty()) throw Error(ErrorCode::kNoExplanatory, "no explanatory variables");
  const std::size_t n = y.size();
  const std::size_t m = xs.size();
  for (std::size_t j = 0; j < m; ++j) {
    if (xs[j].size() != n) {
      throw Error(ErrorCode::kDimension,
                  "explanatory variable " + std::to_string(j + 1) + " has length " +
                      std::to_string(xs[j].size()) + ", response has " +
                      std::to_string(n),
                  j + 1);
    }
  }
  const std::size_t needed = m + (options.intercept ? 2 : 1);
  if (n < needed) {
    throw Error(ErrorCode::kInsufficientData,
                "need at least " + std::to_string(needed) + " observations, got " +
                    std::to_string(n));
  }

  RegressionFit fit;
  double y_mean = 0.0;
  if (options.intercept) {
    CenterResult c = Center(y);
    fit.response = std::move(c.centered);
    y_mean = c.mean;
  } else {
    fit.response = y;
  }
  double y_scale = 0.0;
  for (double v : y) y_scale = std::max(y_scale, std::abs(v));
  const double y_len = Norm(fit.response);
  if (y_len == 0.0 || y_len <= 1e-14 * y_scale * std::sqrt(static_cast<double>(n))) {
    throw Error(ErrorCode::kDegenerateVariable,
                "response has zero length after centering (constant column)", 0);
  }

  const Design design(xs, options);
  fit.beta_hat = design.Coefficients(fit.response);
  fit.fitted = Multiply(design.columns(), fit.beta_hat);
  fit.residuals = Subtract(fit.response, fit.fitted);

  fit.beta0_hat = y_mean;
  for (std::size_t j = 0; j < m; ++j) fit.beta0_hat -= fit.beta_hat[j] * design.means()[j];

  const double ss_reg = Dot(fit.fitted, fit.fitted);
  const double ss_res = Dot(fit.residuals, fit.residuals);
  const double ss_tot = Dot(fit.response, fit.response);
  fit.anova = MakeAnovaTable(n, m, options.intercept, ss_tot, ss_reg, ss_res);
  return fit;
}

}  // namespace georeg
