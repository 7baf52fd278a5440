#include "georeg/special_functions.h"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "georeg/error.h"

namespace georeg {

namespace {

constexpr int kMaxIterations = 300;
constexpr double kEpsilon = 1e-14;
constexpr double kTiny = 1e-300;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Modified Lentz evaluation of the incomplete beta continued fraction.
double BetaContinuedFraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) return h;
  }
  // Converged to the attainable accuracy for extreme parameters.
  return h;
}

// I_x(a, b) with y = 1 - x supplied by the caller so that it need not be
// recovered by cancellation.
double IncompleteBetaWithComplement(double a, double b, double x, double y) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::kDomain, "incomplete beta requires a, b > 0");
  }
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;

  const double log_front = LogGamma(a + b) - LogGamma(a) - LogGamma(b) +
                           a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, y) / b;
}

}  // namespace

double LogGamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::kDomain, "log-gamma requires a finite positive argument");
  }
  if (x < 0.5) {
    // Reflection: Γ(x)Γ(1-x) = π / sin(πx).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           LogGamma(1.0 - x);
  }
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(sum);
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kDomain, "incomplete beta requires x in [0, 1]");
  }
  return IncompleteBetaWithComplement(a, b, x, 1.0 - x);
}

double FSurvival(double f, const FParams& params) {
  const double d1 = params.numerator_df;
  const double d2 = params.denominator_df;
  if (!(d1 >= 1.0) || !(d2 >= 1.0) || !std::isfinite(d1) || !std::isfinite(d2)) {
    throw Error(ErrorCode::kDomain, "F distribution degrees of freedom must be >= 1");
  }
  if (std::isnan(f) || f < 0.0) {
    throw Error(ErrorCode::kDomain, "F statistic must be non-negative");
  }
  if (f == 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  const double denom = d2 + d1 * f;
  return IncompleteBetaWithComplement(0.5 * d2, 0.5 * d1, d2 / denom,
                                      d1 * f / denom);
}

}  // namespace georeg
