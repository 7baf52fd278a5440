#ifndef GEOREG_LINALG_H_
#define GEOREG_LINALG_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace georeg {

// Dense column vector of finite doubles. Construction rejects NaN/Inf.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t size, double fill = 0.0);
  explicit Vector(std::vector<double> values);
  Vector(std::initializer_list<double> values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  const double* data() const { return values_.data(); }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool operator==(const Vector& other) const = default;

 private:
  std::vector<double> values_;
};

// Dense row-major matrix of finite doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix Identity(std::size_t n);
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);
  // Columns become matrix columns; all must share a length.
  static Matrix FromColumns(std::span<const Vector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }

  Vector Row(std::size_t r) const;
  Vector Column(std::size_t c) const;
  Vector Diagonal() const;

  // Principal submatrix over `indices` (rows and columns).
  Matrix Principal(std::span<const std::size_t> indices) const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

struct CenterResult {
  Vector centered;
  double mean = 0.0;
};

CenterResult Center(const Vector& v);

double Dot(const Vector& u, const Vector& v);
double Norm(const Vector& v);
double Sum(const Vector& v);

// Cosine of the angle between u and v, clamped to [-1, 1].
double Cosine(const Vector& u, const Vector& v);

Vector Add(const Vector& u, const Vector& v);
Vector Subtract(const Vector& u, const Vector& v);
Vector Scale(const Vector& v, double factor);

Matrix Transpose(const Matrix& a);
Matrix Multiply(const Matrix& a, const Matrix& b);
Vector Multiply(const Matrix& a, const Vector& x);
// aᵀx without materializing the transpose.
Vector MultiplyTransposed(const Matrix& a, const Vector& x);

double MaxAbsDifference(const Matrix& a, const Matrix& b);
double MaxAbsDifference(const Vector& a, const Vector& b);
bool IsSymmetric(const Matrix& a, double tolerance);

// Lower-triangular Cholesky factor A = LLᵀ of a symmetric positive definite
// matrix. Factorization fails with kSingularMatrix (index = pivot) when a
// pivot drops below 1e-12 times the largest diagonal entry of A.
class Cholesky {
 public:
  static constexpr double kPivotThreshold = 1e-12;

  explicit Cholesky(const Matrix& a);

  std::size_t size() const { return lower_.rows(); }
  const Matrix& lower() const { return lower_; }

  Vector Solve(const Vector& b) const;

 private:
  Matrix lower_;
};

// Solves Aw = b for SPD A via Cholesky.
Vector SolveSpd(const Matrix& a, const Vector& b);

}  // namespace georeg

#endif  // GEOREG_LINALG_H_
