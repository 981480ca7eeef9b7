#pragma once

// Shared helpers for the unit and acceptance suites: seeded RNG plus
// generators for random vectors, Hermitian matrices and density operators.

#include <cmath>
#include <random>
#include <vector>

#include "cglmp/qmath.hpp"

namespace cglmp::testutil {

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eedULL) {
  return std::mt19937_64(seed);
}

inline cplx random_cplx(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return cplx(g(rng), g(rng));
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = random_cplx(rng);
  }
  return m;
}

inline std::vector<cplx> random_unit_vector(std::mt19937_64& rng, int d) {
  std::vector<cplx> v(d);
  double n2 = 0.0;
  for (auto& z : v) {
    z = random_cplx(rng);
    n2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : v) z *= inv;
  return v;
}

inline ComplexMatrix projector_onto(const std::vector<cplx>& v) {
  const int d = static_cast<int>(v.size());
  ComplexMatrix p(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) p(i, j) = v[i] * std::conj(v[j]);
  }
  return p;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int n) {
  ComplexMatrix a = random_matrix(rng, n, n);
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    }
  }
  return h;
}

// G G^dagger / Tr[...] for a random G: full-rank density matrix.
inline ComplexMatrix random_density(std::mt19937_64& rng, int n) {
  ComplexMatrix g = random_matrix(rng, n, n);
  ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho *= cplx(1.0 / tr, 0.0);
  return rho;
}

}  // namespace cglmp::testutil
