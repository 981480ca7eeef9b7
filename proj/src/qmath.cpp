#include "cglmp/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cglmp {

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionMismatchError(std::string(who) + ": matrix must be square");
  }
}

double off_diagonal_frobenius(const ComplexMatrix& a) {
  double sum = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows),
      cols_(cols),
      a_(static_cast<std::size_t>(rows) * cols, cplx(0.0, 0.0)) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionMismatchError("ComplexMatrix: dimensions must be positive");
  }
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

cplx ComplexMatrix::trace() const {
  if (rows_ != cols_) {
    throw DimensionMismatchError("trace: matrix must be square");
  }
  cplx t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius() const {
  double sum = 0.0;
  for (const cplx& z : a_) sum += std::norm(z);
  return std::sqrt(sum);
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& z : a_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionMismatchError("operator+=: shape mismatch");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionMismatchError("operator-=: shape mismatch");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : a_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatchError("operator*: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia) {
    for (int ja = 0; ja < a.cols(); ++ja) {
      const cplx f = a(ia, ja);
      if (f == cplx(0.0, 0.0)) continue;
      for (int ib = 0; ib < b.rows(); ++ib) {
        for (int jb = 0; jb < b.cols(); ++jb) {
          out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
      }
    }
  }
  return out;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionMismatchError("trace_product: shape mismatch");
  }
  cplx t = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      t += a(i, j) * b(j, i);
    }
  }
  return t;
}

double hermiticity_residual(const ComplexMatrix& a) {
  require_square(a, "hermiticity_residual");
  double r = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      r = std::max(r, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return r;
}

HermitianEigenResult hermitian_eig(const ComplexMatrix& input) {
  require_square(input, "hermitian_eig");
  if (!input.all_finite()) {
    throw Error("hermitian_eig: non-finite entries");
  }
  if (hermiticity_residual(input) > 1e-10) {
    throw NotHermitianError("hermitian_eig: input is not Hermitian");
  }

  const int n = input.rows();

  // Symmetrize away the tolerated asymmetry so the iteration sees an
  // exactly Hermitian matrix.
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = cplx(input(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (input(i, j) + std::conj(input(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  }

  ComplexMatrix v = ComplexMatrix::identity(n);

  // Cyclic sweeps.  Each rotation J zeroes a(p,q):
  //   J_pp = c, J_pq = s e^{i phi}, J_qp = -s e^{-i phi}, J_qq = c,
  // with phi = arg a(p,q), tau = (a_qq - a_pp)/(2 |a_pq|), and
  // t = sign(tau) / (|tau| + sqrt(1 + tau^2)) the small root of
  // t^2 + 2 tau t - 1 = 0.  Convergence of off(A) is quadratic.
  const double kOffTol = 1e-12;
  const int kMaxSweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_frobenius(a) <= kOffTol) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const cplx phase = apq / r;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        double t;
        if (tau >= 0.0) {
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        } else {
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // columns p,q of A <- A J
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(phase) * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        // rows p,q of A <- J^dagger A
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);

        // eigenvector accumulator V <- V J
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * std::conj(phase) * vkq;
          v(k, q) = s * phase * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_diagonal_frobenius(a) > kOffTol) {
    throw Error("hermitian_eig: Jacobi iteration did not converge");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&a](int i, int j) {
    return a(i, i).real() > a(j, j).real();
  });

  HermitianEigenResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (int col = 0; col < n; ++col) {
    const int src = order[col];
    out.eigenvalues[col] = a(src, src).real();

    int imax = 0;
    double amax = -1.0;
    for (int i = 0; i < n; ++i) {
      const double m = std::abs(v(i, src));
      if (m > amax) {
        amax = m;
        imax = i;
      }
    }
    cplx ph(1.0, 0.0);
    if (amax > 0.0) ph = std::conj(v(imax, src) / amax);
    for (int i = 0; i < n; ++i) {
      out.eigenvectors(i, col) = ph * v(i, src);
    }
  }
  return out;
}

ComplexMatrix effect_sqrt(double lambda, const ComplexMatrix& projector) {
  require_square(projector, "effect_sqrt");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw OutOfRangeError("effect_sqrt: lambda must lie in [0, 1]");
  }
  const int d = projector.rows();
  const double hi = std::sqrt(lambda + (1.0 - lambda) / d);
  const double lo = std::sqrt((1.0 - lambda) / d);
  ComplexMatrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      out(i, j) = (hi - lo) * projector(i, j);
    }
    out(i, i) += lo;
  }
  return out;
}

}  // namespace cglmp
