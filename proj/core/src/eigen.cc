#include "georeg/eigen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "georeg/error.h"

namespace georeg {

namespace {

constexpr double kSymmetryTolerance = 1e-9;
constexpr double kConvergence = 1e-12;
constexpr int kMaxSweeps = 100;
constexpr double kSignTieTolerance = 1e-12;

double OffDiagonalNorm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) sum += a(r, c) * a(r, c);
    }
  }
  return std::sqrt(sum);
}

double FrobeniusNorm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) sum += a(r, c) * a(r, c);
  }
  return std::sqrt(sum);
}

// Applies the rotation zeroing a(p, q) to both the working matrix and the
// accumulated eigenvector matrix.
void Rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

EigenDecomposition SymmetricEigen(const Matrix& a) {
  if (!a.square() || a.rows() == 0) {
    throw Error(ErrorCode::kShape, "eigendecomposition needs a non-empty square matrix");
  }
  double scale = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) scale = std::max(scale, std::abs(a(r, c)));
  }
  if (!IsSymmetric(a, kSymmetryTolerance * std::max(scale, 1.0))) {
    throw Error(ErrorCode::kShape, "matrix is not symmetric");
  }

  const std::size_t n = a.rows();
  // Symmetrize exactly so rotations see a consistent matrix.
  Matrix work(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) work(r, c) = 0.5 * (a(r, c) + a(c, r));
  }
  Matrix vectors = Matrix::Identity(n);

  const double target = kConvergence * FrobeniusNorm(work);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (OffDiagonalNorm(work) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) Rotate(work, vectors, p, q);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return work(i, i) > work(j, j);
  });

  EigenDecomposition out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = work(src, src);
    double sign = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(vectors(r, src)) > kSignTieTolerance) {
        sign = vectors(r, src) > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = sign * vectors(r, src);
  }
  return out;
}

double MinEigenvalue(const Matrix& a) {
  const EigenDecomposition eig = SymmetricEigen(a);
  return eig.values[eig.values.size() - 1];
}

}  // namespace georeg
