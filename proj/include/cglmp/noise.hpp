#pragma once

// Visibility noise, unsharp Bob measurements, and the sequential protocol:
// Bob_m measures with sharpness lambda_m, the state is updated by the
// square-root (Luders) instrument averaged over Bob's two settings, and the
// next Bob measures the updated state.  Alice stays sharp throughout.

#include <array>
#include <vector>

#include "cglmp/core.hpp"

namespace cglmp {

struct NoisyState {
  BipartiteState base;
  double visibility = 1.0;
  ComplexMatrix density;  // p rho + (1 - p) I/d^2
};

// p rho_psi + (1 - p) I/d^2 for a pure input state.
NoisyState noisy_state(const BipartiteState& psi, double p);

struct EffectSet {
  int d = 0;
  MeasurementBasis basis;
  double lambda = 1.0;
  std::vector<ComplexMatrix> effects;  // E_l = lambda P_l + (1 - lambda)/d I
};

// POVM with 0 < lambda <= 1; lambda = 1 reproduces the sharp projectors.
EffectSet unsharp_effects(const MeasurementBasis& basis, double lambda);

// State update after an unrecorded unsharp Bob measurement, averaged over
// Bob's two settings with weight 1/2 each:
//   rho' = (1/2) sum_{b,l} (I (x) sqrt E_l^b) rho (I (x) sqrt E_l^b).
// Trace preserving and unital.
ComplexMatrix luders_channel(const DimensionCache& dc, const ComplexMatrix& rho,
                             double lambda);

struct SequentialRun {
  int d = 0;
  StateKind kind = StateKind::mes;
  double visibility = 1.0;
  std::vector<double> sharpness;     // lambda_m, one per round
  std::vector<double> round_values;  // I^m seen by Bob_m
};

// Round m evaluates I_d on the current state with Bob sharpness lambda_m,
// then (except after the last round) applies the channel at lambda_m.
SequentialRun sequential_values(Lab& lab, int d, StateKind kind, double p,
                                const std::vector<double>& lambdas);

struct MinViolationResult {
  // I^1 at lambda_1 = 1, I^2 at (lambda_1*, 1), I^3 at (lambda_1*, lambda_2*, 1)
  std::array<double, 3> rounds{};
  // lambda_m* = the sharpness at which round m exactly reaches the local bound
  std::array<double, 2> thresholds{};
};

// Three-round ladder at full visibility: each Bob before the last runs at
// the minimal sharpness that still violates, the last runs sharp.
MinViolationResult min_violation_table(Lab& lab, int d, StateKind kind);

}  // namespace cglmp
