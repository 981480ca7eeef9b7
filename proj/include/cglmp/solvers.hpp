#pragma once

// Noise-threshold solvers on top of the cached Bell traces: critical
// sharpness/visibility lines, the area of the nonlocal region in the
// (1 - lambda, 1 - p) plane, and the smallest visibility that still
// supports a double sequential violation.

#include <array>
#include <vector>

#include "cglmp/core.hpp"

namespace cglmp {

// Smallest sharpness with I(p, lambda) = 2 at fixed visibility p.
// Throws NoViolationError when sharp measurements already stay local.
double lambda_min(Lab& lab, int d, StateKind kind, double p);

// Smallest visibility with a violation under sharp measurements.
double p_min(Lab& lab, int d, StateKind kind);

struct AnrResult {
  int d = 0;
  StateKind kind = StateKind::mes;
  double p_min = 0.0;
  double area = 0.0;              // adaptive quadrature of the boundary curve
  double area_closed_form = 0.0;  // 1 - p_min + p_min ln p_min
};

// Area of the (1 - lambda, 1 - p) region violating the inequality.  The
// quadrature integrates the solver-produced boundary; the closed form is
// the exact area when I(p, lambda) = p lambda I(1, 1).
AnrResult anr(Lab& lab, int d, StateKind kind);

struct QminResult {
  int d = 0;
  StateKind kind = StateKind::mes;
  double lambda_cross = 0.0;    // sharpness where rounds 1 and 2 tie
  double value_at_cross = 0.0;  // common Bell value at the tie
  double q_min = 0.0;           // 2 / value_at_cross
};

// Smallest visibility at which two sequential observers can both violate.
// Round 1 rises and round 2 falls with the first sharpness, so the best
// simultaneous pair sits at their crossing; both rounds scale linearly
// with p, hence q_min = 2 / I(crossing).
QminResult q_min(Lab& lab, int d, StateKind kind);

// Grid-scan variant maximising min(I^1, I^2) with lambda_1 resolution
// `step`.  Slow; cross-checks the bisection path.
QminResult q_min_scan(Lab& lab, int d, StateKind kind, double step);

struct BoundaryCurve {
  int d = 0;
  StateKind kind = StateKind::mes;
  double p_min = 0.0;
  // (1 - lambda_min(p), 1 - p) rows, p ascending from p_min to 1.
  std::vector<std::array<double, 2>> points;
};

BoundaryCurve boundary_curve(Lab& lab, int d, StateKind kind, int grid);

}  // namespace cglmp
