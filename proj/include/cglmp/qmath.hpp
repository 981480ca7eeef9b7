#pragma once

// Dense complex linear algebra for small operators (dimension <= ~100):
// products, Kronecker products, traces, a cyclic-Jacobi Hermitian
// eigensolver, and the analytic square root of rank-1-plus-isotropic
// effects.  Everything is double precision and value semantic; nothing
// here allocates once matrices reach their final size.

#include <complex>
#include <vector>

#include "cglmp/errors.hpp"

namespace cglmp {

using cplx = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);
  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

// Kronecker product; row index of the result is i_a * b.rows() + i_b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Tr[A B] without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// max_ij |A(i,j) - conj(A(j,i))|
double hermiticity_residual(const ComplexMatrix& a);

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Full spectral decomposition by cyclic Jacobi rotations.  Requires
// hermiticity_residual(a) <= 1e-10; iterates until the off-diagonal
// Frobenius norm is <= 1e-12.  Each eigenvector's phase is fixed so that
// its largest-magnitude component is real and positive.
HermitianEigenResult hermitian_eig(const ComplexMatrix& a);

// Square root of the unsharp effect lambda * P + (1 - lambda)/d * I for a
// rank-1 projector P on C^d, computed analytically on the two eigenspaces:
//   sqrt(lambda + (1 - lambda)/d) * P + sqrt((1 - lambda)/d) * (I - P).
ComplexMatrix effect_sqrt(double lambda, const ComplexMatrix& projector);

}  // namespace cglmp
