#pragma once

// Kernel of the qudit Bell test.
//
// Conventions, fixed once here and relied on everywhere else:
//
//  * Both parties have two settings.  Alice's basis vectors are
//      <j | k>_{A_a} = exp(+i 2 pi j (k + alpha_a) / d) / sqrt(d)
//    with alpha_1 = 0, alpha_2 = 1/2.  Bob's are
//      <j | l>_{B_b} = exp(+i 2 pi j (-l + beta_b) / d) / sqrt(d)
//    with beta_1 = 1/4, beta_2 = -1/4.  j indexes the computational basis,
//    k/l the outcome.
//
//  * The Bell expression is the weighted sum
//      I_d = sum_{k=0}^{floor(d/2)-1} w_k [ f(k) - f(-k-1) ],
//      w_k = 1 - 2k/(d-1),
//      f(k) = P(A1 = B1 + k) + P(B1 = A2 + k + 1)
//           + P(A2 = B2 + k) + P(B2 = A1 + k),
//    all outcome relations mod d, "X = Y + k" meaning outcome(X) - outcome(Y)
//    is congruent to k.  Local (hidden-variable) bound: 2.
//
//  * Bipartite operators act on C^d (x) C^d with the row index
//    j_alice * d + j_bob.

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cglmp/qmath.hpp"

namespace cglmp {

enum class Party { alice, bob };
enum class StateKind { mes, mvs, custom };

const char* to_string(StateKind kind);

struct MeasurementBasis {
  int d = 0;
  Party party = Party::alice;
  int setting = 0;      // 1 or 2
  double phase = 0.0;   // alpha_a or beta_b
  // vectors[outcome][j], orthonormal rows
  std::vector<std::vector<cplx>> vectors;

  ComplexMatrix projector(int outcome) const;
};

MeasurementBasis alice_basis(int d, int setting);
MeasurementBasis bob_basis(int d, int setting);

// Coefficient tensor c[a][b][j][l] such that
//   I_d = sum c[a][b][j][l] P(A_a = j, B_b = l).
// Coefficients depend on (j - l) mod d only.
class BellFunctional {
 public:
  explicit BellFunctional(int d);

  int dim() const { return d_; }
  double coeff(int a, int b, int j, int l) const;  // a, b in {1, 2}
  static constexpr double local_bound = 2.0;

 private:
  int d_;
  std::vector<double> c_;
};

struct BellOperator {
  int d = 0;
  ComplexMatrix matrix;  // d^2 x d^2, Hermitian
};

// Operator form of I_d under the fixed bases: sum of c * (P_aj (x) P_bl).
BellOperator bell_operator(int d);

struct BipartiteState {
  int d = 0;
  StateKind kind = StateKind::custom;
  ComplexMatrix density;  // d^2 x d^2
};

// |psi> = sum_j |jj> / sqrt(d)
BipartiteState mes(int d);

// Top eigenvector of the Bell operator (3 <= d <= 10).  Throws
// DegenerateTopError when the top of the spectrum is not separated by at
// least 1e-8.  The eigenvector is Schmidt-diagonal in the computational
// basis; its coefficients are exposed through mvs_schmidt_coefficients.
BipartiteState mvs(int d);
std::vector<double> mvs_schmidt_coefficients(int d);

// Trace out one party of a d^2 x d^2 bipartite operator.
ComplexMatrix partial_trace_alice(const ComplexMatrix& rho, int d);
ComplexMatrix partial_trace_bob(const ComplexMatrix& rho, int d);

// I_d as the coefficient-weighted sum of outcome probabilities
//   P(a j; b l) = Tr[rho (P_aj (x) E_bl)]
// for arbitrary Bob effects (sharp projectors or unsharp POVM elements).
double cglmp_value(const BellFunctional& functional, const ComplexMatrix& rho,
                   const std::array<MeasurementBasis, 2>& alice,
                   const std::array<std::vector<ComplexMatrix>, 2>& bob_effects);

// Sharp-measurement convenience overload.
double cglmp_value(const ComplexMatrix& rho, int d);

// Everything fixed by the dimension alone, built once and reused: bases,
// projectors, functional, the Bell operator, its Bob-isotropic companion
//   B_iso = sum c * (P_aj (x) I/d),
// and the two reference states.  B(lambda) = lambda B + (1 - lambda) B_iso
// is the exact operator seen by unsharp Bob measurements, so the four
// traces cached below make state/visibility scans O(1).
struct DimensionCache {
  int d = 0;
  std::array<MeasurementBasis, 2> alice;
  std::array<MeasurementBasis, 2> bob;
  std::array<std::vector<ComplexMatrix>, 2> alice_proj;  // [setting-1][outcome]
  std::array<std::vector<ComplexMatrix>, 2> bob_proj;
  BellFunctional functional;
  ComplexMatrix bell;
  ComplexMatrix bell_iso;

  BipartiteState mes_state;
  double mes_value = 0.0;   // Tr[rho_mes B]
  double mes_iso = 0.0;     // Tr[rho_mes B_iso]
  double unif_value = 0.0;  // Tr[(I/d^2) B]
  double unif_iso = 0.0;    // Tr[(I/d^2) B_iso]

  // populated for 3 <= d <= 10 only
  bool has_mvs = false;
  BipartiteState mvs_state;
  double mvs_value = 0.0;
  double mvs_iso = 0.0;
  std::vector<double> mvs_schmidt;

  explicit DimensionCache(int d);

  const BipartiteState& state(StateKind kind) const;
  double state_value(StateKind kind) const;  // Tr[rho B]
  double state_iso(StateKind kind) const;    // Tr[rho B_iso]

  // Tr[rho_p B(lambda)] for rho_p = p rho_kind + (1-p) I/d^2, expanded
  // bilinearly over the cached traces.  Exact, no factorization assumption.
  double fast_value(StateKind kind, double p, double lambda) const;
};

// lambda I_sharp + (1 - lambda) I_iso for an arbitrary bipartite state.
double bell_value(const DimensionCache& dc, const ComplexMatrix& rho,
                  double lambda);

// Thread-safe per-dimension cache.  References remain valid for the life
// of the Lab.
class Lab {
 public:
  const DimensionCache& dim(int d);

 private:
  struct Slot {
    std::once_flag built;
    std::unique_ptr<DimensionCache> cache;
  };
  std::mutex mu_;  // guards map topology only
  std::map<int, Slot> cache_;
};

}  // namespace cglmp
