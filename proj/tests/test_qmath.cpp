#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "cglmp/qmath.hpp"
#include "test_util.hpp"

using namespace cglmp;
namespace tu = cglmp::testutil;

namespace {

double reconstruction_residual(const ComplexMatrix& a,
                               const HermitianEigenResult& eig) {
  const int n = a.rows();
  ComplexMatrix lambda(n, n);
  for (int i = 0; i < n; ++i) lambda(i, i) = eig.eigenvalues[i];
  ComplexMatrix rebuilt =
      eig.eigenvectors * lambda * eig.eigenvectors.adjoint();
  rebuilt -= a;
  return rebuilt.max_abs();
}

}  // namespace

TEST_CASE("tensor of identities is the identity") {
  ComplexMatrix t = tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(3));
  REQUIRE(t.rows() == 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      CHECK(t(i, j) == cplx(i == j ? 1.0 : 0.0, 0.0));
    }
  }
}

TEST_CASE("tensor of basis projectors places the single unit entry") {
  ComplexMatrix pa(2, 2), pb(2, 2);
  pa(0, 0) = 1.0;  // |0><0|
  pb(1, 1) = 1.0;  // |1><1|
  ComplexMatrix t = tensor(pa, pb);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(t(i, j) == cplx(i == 1 && j == 1 ? 1.0 : 0.0, 0.0));
    }
  }
}

TEST_CASE("tensor trace multiplicativity against direct evaluation") {
  auto rng = tu::make_rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix a = tu::random_matrix(rng, 3, 3);
    ComplexMatrix b = tu::random_matrix(rng, 4, 4);
    const cplx lhs = tensor(a, b).trace();
    const cplx rhs = a.trace() * b.trace();
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("tensor is associative (exact on integer matrices)") {
  auto rng = tu::make_rng(12);
  std::uniform_int_distribution<int> pick(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a(2, 2), b(3, 2), c(2, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) = cplx(pick(rng), pick(rng));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) b(i, j) = cplx(pick(rng), pick(rng));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) c(i, j) = cplx(pick(rng), pick(rng));
    ComplexMatrix lhs = tensor(tensor(a, b), c);
    ComplexMatrix rhs = tensor(a, tensor(b, c));
    REQUIRE(lhs.rows() == rhs.rows());
    REQUIRE(lhs.cols() == rhs.cols());
    for (int i = 0; i < lhs.rows(); ++i) {
      for (int j = 0; j < lhs.cols(); ++j) {
        CHECK(lhs(i, j) == rhs(i, j));
      }
    }
  }
}

TEST_CASE("trace_product equals the trace of the product") {
  auto rng = tu::make_rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix a = tu::random_matrix(rng, 5, 5);
    ComplexMatrix b = tu::random_matrix(rng, 5, 5);
    CHECK(std::abs(trace_product(a, b) - (a * b).trace()) <= 1e-12);
  }
}

TEST_CASE("hermitian_eig on a diagonal matrix sorts descending") {
  ComplexMatrix a(3, 3);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  a(2, 2) = 2.0;
  auto eig = hermitian_eig(a);
  CHECK(eig.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
  // eigenvector of 3.0 is e_0, with the phase convention making it (1,0,0)
  CHECK(std::abs(eig.eigenvectors(0, 0) - cplx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("hermitian_eig reproduces the symmetric 2x2 flip") {
  ComplexMatrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  auto eig = hermitian_eig(x);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
  const double s = 1.0 / std::sqrt(2.0);
  // phase convention: first component real positive
  CHECK(std::abs(eig.eigenvectors(0, 0) - cplx(s, 0.0)) <= 1e-12);
  CHECK(std::abs(eig.eigenvectors(1, 0) - cplx(s, 0.0)) <= 1e-12);
  CHECK(std::abs(eig.eigenvectors(0, 1) - cplx(s, 0.0)) <= 1e-12);
  CHECK(std::abs(eig.eigenvectors(1, 1) - cplx(-s, 0.0)) <= 1e-12);
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  auto rng = tu::make_rng(14);
  for (int n : {3, 9, 25, 40}) {
    ComplexMatrix a = tu::random_hermitian(rng, n);
    auto eig = hermitian_eig(a);
    CHECK(reconstruction_residual(a, eig) <= 1e-10);

    // orthonormal columns
    ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    gram -= ComplexMatrix::identity(n);
    CHECK(gram.max_abs() <= 1e-10);

    // eigenvalue sum equals the trace
    double sum = 0.0;
    for (double ev : eig.eigenvalues) sum += ev;
    CHECK(sum == doctest::Approx(a.trace().real()).epsilon(1e-10));

    // descending order
    for (std::size_t i = 1; i < eig.eigenvalues.size(); ++i) {
      CHECK(eig.eigenvalues[i - 1] >= eig.eigenvalues[i] - 1e-12);
    }
  }
}

TEST_CASE("hermitian_eig phase convention makes anchor components positive") {
  auto rng = tu::make_rng(15);
  ComplexMatrix a = tu::random_hermitian(rng, 12);
  auto eig = hermitian_eig(a);
  for (int col = 0; col < 12; ++col) {
    int imax = 0;
    double amax = -1.0;
    for (int i = 0; i < 12; ++i) {
      const double m = std::abs(eig.eigenvectors(i, col));
      if (m > amax) {
        amax = m;
        imax = i;
      }
    }
    const cplx anchor = eig.eigenvectors(imax, col);
    CHECK(anchor.real() > 0.0);
    CHECK(std::abs(anchor.imag()) <= 1e-12 * amax + 1e-14);
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix a(2, 2);
  a(0, 1) = cplx(0.0, 1.0);
  a(1, 0) = cplx(0.0, 1.0);  // conj would need -i
  CHECK_THROWS_AS(hermitian_eig(a), NotHermitianError);
}

TEST_CASE("hermitian_eig rejects non-square input") {
  ComplexMatrix a(2, 3);
  CHECK_THROWS_AS(hermitian_eig(a), DimensionMismatchError);
}

TEST_CASE("effect_sqrt at lambda=1 returns the projector") {
  auto rng = tu::make_rng(16);
  ComplexMatrix p = tu::projector_onto(tu::random_unit_vector(rng, 4));
  ComplexMatrix s = effect_sqrt(1.0, p);
  s -= p;
  CHECK(s.max_abs() <= 1e-14);
}

TEST_CASE("effect_sqrt at lambda=0 is the isotropic square root") {
  ComplexMatrix p(3, 3);
  p(0, 0) = 1.0;
  ComplexMatrix s = effect_sqrt(0.0, p);
  const double expect = 1.0 / std::sqrt(3.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(s(i, j) - cplx(i == j ? expect : 0.0, 0.0)) <= 1e-14);
    }
  }
}

TEST_CASE("effect_sqrt squares back to the unsharp effect") {
  auto rng = tu::make_rng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> dim(2, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = dim(rng);
    const double lambda = unif(rng);
    ComplexMatrix p = tu::projector_onto(tu::random_unit_vector(rng, d));
    ComplexMatrix s = effect_sqrt(lambda, p);

    ComplexMatrix effect(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) effect(i, j) = lambda * p(i, j);
      effect(i, i) += (1.0 - lambda) / d;
    }
    ComplexMatrix s2 = s * s;
    s2 -= effect;
    CHECK(s2.max_abs() <= 1e-12);
    CHECK(hermiticity_residual(s) <= 1e-12);
  }
}

TEST_CASE("effect_sqrt rejects lambda outside [0,1]") {
  ComplexMatrix p(2, 2);
  p(0, 0) = 1.0;
  CHECK_THROWS_AS(effect_sqrt(-0.1, p), OutOfRangeError);
  CHECK_THROWS_AS(effect_sqrt(1.1, p), OutOfRangeError);
  const double nan = std::nan("");
  CHECK_THROWS_AS(effect_sqrt(nan, p), OutOfRangeError);
}
