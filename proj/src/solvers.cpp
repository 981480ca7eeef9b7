#include "cglmp/solvers.hpp"

#include <cmath>
#include <utility>

#include "cglmp/errors.hpp"
#include "cglmp/noise.hpp"

namespace cglmp {

namespace {

// Root of an increasing margin on [lo, hi]; caller guarantees the bracket.
template <typename F>
double bisect_root(const F& margin, double lo, double hi, double tol) {
  if (margin(lo) > 0.0 || margin(hi) < 0.0)
    throw Error("bisect_root: root not bracketed");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (margin(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

template <typename F>
double simpson_refine(const F& f, double a, double m, double b, double fa,
                      double fm, double fb, double whole, double tol,
                      int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_refine(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_refine(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_refine(f, a, m, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double lambda_min(Lab& lab, int d, StateKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw OutOfRangeError("lambda_min: visibility must lie in [0, 1]");
  const DimensionCache& dc = lab.dim(d);
  if (dc.fast_value(kind, p, 1.0) <= BellFunctional::local_bound)
    throw NoViolationError(
        "lambda_min: no violation at this visibility even when sharp");
  auto margin = [&](double l) {
    return dc.fast_value(kind, p, l) - BellFunctional::local_bound;
  };
  return bisect_root(margin, 0.0, 1.0, 1e-12);
}

double p_min(Lab& lab, int d, StateKind kind) {
  const DimensionCache& dc = lab.dim(d);
  if (dc.state_value(kind) <= BellFunctional::local_bound)
    throw NoViolationError("p_min: the pure state does not violate");
  auto margin = [&](double p) {
    return dc.fast_value(kind, p, 1.0) - BellFunctional::local_bound;
  };
  return bisect_root(margin, 0.0, 1.0, 1e-12);
}

AnrResult anr(Lab& lab, int d, StateKind kind) {
  AnrResult r;
  r.d = d;
  r.kind = kind;
  r.p_min = p_min(lab, d, kind);
  r.area_closed_form = 1.0 - r.p_min + r.p_min * std::log(r.p_min);

  // Integrate the boundary along the 1-p axis; the guard mirrors the
  // lambda_min precondition so the quadrature never steps outside the
  // violating region at the upper endpoint.
  const DimensionCache& dc = lab.dim(d);
  auto width = [&](double u) {
    const double p = 1.0 - u;
    if (dc.fast_value(kind, p, 1.0) <= BellFunctional::local_bound) return 0.0;
    return 1.0 - lambda_min(lab, d, kind, p);
  };
  r.area = adaptive_simpson(width, 0.0, 1.0 - r.p_min, 1e-8);
  return r;
}

QminResult q_min(Lab& lab, int d, StateKind kind) {
  const DimensionCache& dc = lab.dim(d);
  const ComplexMatrix& psi = dc.state(kind).density;
  auto round1 = [&](double l1) { return dc.fast_value(kind, 1.0, l1); };
  auto round2 = [&](double l1) {
    return bell_value(dc, luders_channel(dc, psi, l1), 1.0);
  };
  // Round 1 rises with l1, round 2 falls; their difference brackets zero
  // because the channel in the l1 -> 0 limit is the identity.  The channel
  // itself is only defined for positive sharpness, so start just above 0.
  auto gap = [&](double l1) { return round1(l1) - round2(l1); };
  if (gap(1.0) < 0.0)
    throw NoCrossingError("q_min: rounds 1 and 2 never tie");
  QminResult r;
  r.d = d;
  r.kind = kind;
  r.lambda_cross = bisect_root(gap, 1e-9, 1.0, 1e-10);
  r.value_at_cross =
      0.5 * (round1(r.lambda_cross) + round2(r.lambda_cross));
  if (r.value_at_cross <= BellFunctional::local_bound)
    throw NoViolationError("q_min: no double violation at any visibility");
  r.q_min = BellFunctional::local_bound / r.value_at_cross;
  return r;
}

QminResult q_min_scan(Lab& lab, int d, StateKind kind, double step) {
  if (!(step > 0.0 && step <= 0.25))
    throw OutOfRangeError("q_min_scan: step must lie in (0, 0.25]");
  const DimensionCache& dc = lab.dim(d);
  const ComplexMatrix& psi = dc.state(kind).density;
  const int n = static_cast<int>(std::floor(1.0 / step));
  double best_l = 0.0;
  double best_v = -1.0;
  for (int i = 1; i <= n; ++i) {
    const double l1 = std::min(i * step, 1.0);
    const double v1 = dc.fast_value(kind, 1.0, l1);
    const double v2 = bell_value(dc, luders_channel(dc, psi, l1), 1.0);
    const double v = std::min(v1, v2);
    if (v > best_v) {
      best_v = v;
      best_l = l1;
    }
  }
  if (best_v <= BellFunctional::local_bound)
    throw NoViolationError("q_min_scan: no double violation on the grid");
  QminResult r;
  r.d = d;
  r.kind = kind;
  r.lambda_cross = best_l;
  r.value_at_cross = best_v;
  r.q_min = BellFunctional::local_bound / best_v;
  return r;
}

BoundaryCurve boundary_curve(Lab& lab, int d, StateKind kind, int grid) {
  if (grid < 2) throw OutOfRangeError("boundary_curve: grid must be >= 2");
  BoundaryCurve curve;
  curve.d = d;
  curve.kind = kind;
  curve.p_min = p_min(lab, d, kind);
  curve.points.reserve(static_cast<size_t>(grid));
  const DimensionCache& dc = lab.dim(d);
  for (int i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) / (grid - 1);
    const double p = curve.p_min + (1.0 - curve.p_min) * t;
    double x = 0.0;
    if (dc.fast_value(kind, p, 1.0) > BellFunctional::local_bound)
      x = 1.0 - lambda_min(lab, d, kind, p);
    curve.points.push_back({x, 1.0 - p});
  }
  return curve;
}

}  // namespace cglmp
