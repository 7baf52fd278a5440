#ifndef GEOREG_EIGEN_H_
#define GEOREG_EIGEN_H_

#include "georeg/linalg.h"

namespace georeg {

// values descending; vectors holds the matching unit eigenvectors as columns,
// each oriented so that its first entry with |v| > 1e-12 is positive.
struct EigenDecomposition {
  Vector values;
  Matrix vectors;

  Vector EigenVector(std::size_t k) const { return vectors.Column(k); }
};

// Cyclic Jacobi eigensolver for symmetric matrices. Rejects asymmetry above
// 1e-9 (relative to the largest entry) with kShape.
EigenDecomposition SymmetricEigen(const Matrix& a);

// Smallest eigenvalue, via SymmetricEigen.
double MinEigenvalue(const Matrix& a);

}  // namespace georeg

#endif  // GEOREG_EIGEN_H_
