#include "georeg/linalg.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "georeg/error.h"

namespace georeg {

namespace {

void CheckFinite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kDomain,
                  "non-finite entry at position " + std::to_string(i), i);
    }
  }
}

void CheckSameSize(const Vector& u, const Vector& v, const char* what) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kDimension,
                std::string(what) + ": length mismatch (" +
                    std::to_string(u.size()) + " vs " +
                    std::to_string(v.size()) + ")");
  }
}

}  // namespace

Vector::Vector(std::size_t size, double fill) : values_(size, fill) {
  CheckFinite(values_);
}

Vector::Vector(std::vector<double> values) : values_(std::move(values)) {
  CheckFinite(values_);
}

Vector::Vector(std::initializer_list<double> values) : values_(values) {
  CheckFinite(values_);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {
  CheckFinite(values_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  for (const auto& row : rows) copy.emplace_back(row);
  *this = FromRows(copy);
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::kShape,
                  "ragged matrix: row " + std::to_string(r) + " has " +
                      std::to_string(rows[r].size()) + " entries, expected " +
                      std::to_string(cols),
                  r);
    }
    CheckFinite(rows[r]);
    std::copy(rows[r].begin(), rows[r].end(), m.values_.begin() + r * cols);
  }
  return m;
}

Matrix Matrix::FromColumns(std::span<const Vector> columns) {
  if (columns.empty()) return Matrix();
  const std::size_t rows = columns.front().size();
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw Error(ErrorCode::kDimension,
                  "column " + std::to_string(c) + " has length " +
                      std::to_string(columns[c].size()) + ", expected " +
                      std::to_string(rows),
                  c);
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Vector Matrix::Row(std::size_t r) const {
  return Vector(std::vector<double>(values_.begin() + r * cols_,
                                    values_.begin() + (r + 1) * cols_));
}

Vector Matrix::Column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vector Matrix::Diagonal() const {
  const std::size_t n = std::min(rows_, cols_);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (*this)(i, i);
  return v;
}

Matrix Matrix::Principal(std::span<const std::size_t> indices) const {
  Matrix sub(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      if (indices[i] >= rows_ || indices[j] >= cols_) {
        throw Error(ErrorCode::kDimension, "principal index out of range");
      }
      sub(i, j) = (*this)(indices[i], indices[j]);
    }
  }
  return sub;
}

CenterResult Center(const Vector& v) {
  if (v.empty()) throw Error(ErrorCode::kDimension, "cannot center an empty vector");
  const double mean = Sum(v) / static_cast<double>(v.size());
  Vector centered(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) centered[i] = v[i] - mean;
  return {std::move(centered), mean};
}

double Dot(const Vector& u, const Vector& v) {
  CheckSameSize(u, v, "dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i];
  return sum;
}

double Norm(const Vector& v) {
  // Scaled accumulation so very large or very small entries do not overflow.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double x : v) {
    const double t = x / scale;
    sum += t * t;
  }
  return scale * std::sqrt(sum);
}

double Sum(const Vector& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum;
}

double Cosine(const Vector& u, const Vector& v) {
  CheckSameSize(u, v, "cosine");
  const double nu = Norm(u);
  const double nv = Norm(v);
  if (nu == 0.0 || nv == 0.0) {
    throw Error(ErrorCode::kDegenerateVector,
                "correlation undefined for a zero-length vector");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += (u[i] / nu) * (v[i] / nv);
  return std::clamp(sum, -1.0, 1.0);
}

Vector Add(const Vector& u, const Vector& v) {
  CheckSameSize(u, v, "add");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

Vector Subtract(const Vector& u, const Vector& v) {
  CheckSameSize(u, v, "subtract");
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

Vector Scale(const Vector& v, double factor) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

Matrix Transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  }
  return t;
}

Matrix Multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimension,
                "matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + ")");
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Vector Multiply(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kDimension, "mat_vec: dimension mismatch");
  }
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * x[j];
    out[i] = sum;
  }
  return out;
}

Vector MultiplyTransposed(const Matrix& a, const Vector& x) {
  if (a.rows() != x.size()) {
    throw Error(ErrorCode::kDimension, "mat_vec (transposed): dimension mismatch");
  }
  Vector out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += a(i, j) * x[i];
  }
  return out;
}

double MaxAbsDifference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimension, "matrix shapes differ");
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    }
  }
  return worst;
}

double MaxAbsDifference(const Vector& a, const Vector& b) {
  CheckSameSize(a, b, "difference");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

bool IsSymmetric(const Matrix& a, double tolerance) {
  if (!a.square()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = r + 1; c < a.cols(); ++c) {
      if (std::abs(a(r, c) - a(c, r)) > tolerance) return false;
    }
  }
  return true;
}

Cholesky::Cholesky(const Matrix& a) {
  if (!a.square() || a.rows() == 0) {
    throw Error(ErrorCode::kDimension, "cholesky: matrix must be square and non-empty");
  }
  const std::size_t n = a.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
  const double threshold = kPivotThreshold * max_diag;

  lower_ = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= lower_(j, k) * lower_(j, k);
    if (!(pivot > threshold)) {
      throw Error(ErrorCode::kSingularMatrix,
                  "matrix is not numerically positive definite (pivot " +
                      std::to_string(j) + ")",
                  j);
    }
    const double diag = std::sqrt(pivot);
    lower_(j, j) = diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      double sum = a(i, j);
      for (std::size_t k = 0; k < j; ++k) sum -= lower_(i, k) * lower_(j, k);
      lower_(i, j) = sum / diag;
    }
  }
}

Vector Cholesky::Solve(const Vector& b) const {
  const std::size_t n = size();
  if (b.size() != n) throw Error(ErrorCode::kDimension, "cholesky solve: size mismatch");
  Vector w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= lower_(i, k) * w[k];
    w[i] = sum / lower_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double sum = w[i];
    for (std::size_t k = i + 1; k < n; ++k) sum -= lower_(k, i) * w[k];
    w[i] = sum / lower_(i, i);
  }
  return w;
}

Vector SolveSpd(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) {
    throw Error(ErrorCode::kDimension, "solve_spd: right-hand side length mismatch");
  }
  return Cholesky(a).Solve(b);
}

}  // namespace georeg
