#include "cglmp/noise.hpp"

#include <cmath>
#include <functional>

namespace cglmp {

namespace {

void check_visibility(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw OutOfRangeError(std::string(who) + ": visibility must lie in [0, 1]");
  }
}

void check_sharpness(double lambda, const char* who) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw OutOfRangeError(std::string(who) + ": sharpness must lie in (0, 1]");
  }
}

// out += w * (I (x) m) rho (I (x) m) for a Hermitian d x d factor m,
// multiplying block by block: the (ia, ka) block of rho maps to m B m.
void accumulate_bob_sandwich(const ComplexMatrix& rho, const ComplexMatrix& m,
                             double w, int d, ComplexMatrix& out) {
  ComplexMatrix blk(d, d), tmp(d, d);
  for (int ia = 0; ia < d; ++ia) {
    for (int ka = 0; ka < d; ++ka) {
      for (int j = 0; j < d; ++j) {
        for (int l = 0; l < d; ++l) {
          blk(j, l) = rho(ia * d + j, ka * d + l);
        }
      }
      // tmp = m * blk
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          cplx sum = 0.0;
          for (int k = 0; k < d; ++k) sum += m(i, k) * blk(k, j);
          tmp(i, j) = sum;
        }
      }
      // out_blk += w * tmp * m
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          cplx sum = 0.0;
          for (int k = 0; k < d; ++k) sum += tmp(i, k) * m(k, j);
          out(ia * d + i, ka * d + j) += w * sum;
        }
      }
    }
  }
}

}  // namespace

NoisyState noisy_state(const BipartiteState& psi, double p) {
  check_visibility(p, "noisy_state");
  const int n = psi.d * psi.d;
  if (psi.density.rows() != n || psi.density.cols() != n) {
    throw DimensionMismatchError("noisy_state: state dimension mismatch");
  }
  // the admixture model is defined for pure inputs
  const double purity = trace_product(psi.density, psi.density).real();
  if (std::abs(purity - 1.0) > 1e-8) {
    throw OutOfRangeError("noisy_state: input state must be pure");
  }

  NoisyState out;
  out.base = psi;
  out.visibility = p;
  out.density = psi.density;
  out.density *= cplx(p, 0.0);
  for (int i = 0; i < n; ++i) out.density(i, i) += (1.0 - p) / n;
  return out;
}

EffectSet unsharp_effects(const MeasurementBasis& basis, double lambda) {
  check_sharpness(lambda, "unsharp_effects");
  EffectSet set;
  set.d = basis.d;
  set.basis = basis;
  set.lambda = lambda;
  set.effects.reserve(basis.d);
  for (int l = 0; l < basis.d; ++l) {
    ComplexMatrix e = basis.projector(l);
    e *= cplx(lambda, 0.0);
    for (int i = 0; i < basis.d; ++i) e(i, i) += (1.0 - lambda) / basis.d;
    set.effects.push_back(std::move(e));
  }
  return set;
}

ComplexMatrix luders_channel(const DimensionCache& dc, const ComplexMatrix& rho,
                             double lambda) {
  check_sharpness(lambda, "luders_channel");
  const int d = dc.d;
  const int n = d * d;
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionMismatchError("luders_channel: state dimension mismatch");
  }
  if (!rho.all_finite()) {
    throw Error("luders_channel: non-finite state");
  }

  ComplexMatrix out(n, n);
  for (int b = 0; b < 2; ++b) {
    for (int l = 0; l < d; ++l) {
      const ComplexMatrix root = effect_sqrt(lambda, dc.bob_proj[b][l]);
      accumulate_bob_sandwich(rho, root, 0.5, d, out);
    }
  }

  const double tr = out.trace().real();
  if (std::abs(tr - rho.trace().real()) > 1e-10 || !out.all_finite()) {
    throw Error("luders_channel: output failed trace validation");
  }
  return out;
}

SequentialRun sequential_values(Lab& lab, int d, StateKind kind, double p,
                                const std::vector<double>& lambdas) {
  check_visibility(p, "sequential_values");
  if (lambdas.empty()) {
    throw OutOfRangeError("sequential_values: need at least one round");
  }
  for (double lambda : lambdas) check_sharpness(lambda, "sequential_values");

  const DimensionCache& dc = lab.dim(d);
  const NoisyState initial = noisy_state(dc.state(kind), p);

  SequentialRun run;
  run.d = d;
  run.kind = kind;
  run.visibility = p;
  run.sharpness = lambdas;
  run.round_values.reserve(lambdas.size());

  ComplexMatrix rho = initial.density;
  for (std::size_t m = 0; m < lambdas.size(); ++m) {
    run.round_values.push_back(bell_value(dc, rho, lambdas[m]));
    if (m + 1 < lambdas.size()) {
      rho = luders_channel(dc, rho, lambdas[m]);
    }
  }
  return run;
}

namespace {

// Smallest sharpness at which `value_at` reaches the local bound.  The
// round value is affine in lambda with a numerically vanishing intercept,
// so the threshold is the exact division 2 / I(1); the linearity check
// guards that assumption and bisection covers the general case.
double violation_threshold(double opt, const std::function<double(double)>& value_at) {
  if (opt <= BellFunctional::local_bound) {
    throw NoViolationError("min_violation_table: round cannot violate");
  }
  const double mid = value_at(0.5);
  if (std::abs(mid - 0.5 * opt) <= 1e-10) {
    return BellFunctional::local_bound / opt;
  }
  double lo = 1e-12, hi = 1.0;
  if (value_at(lo) >= BellFunctional::local_bound) {
    throw NoViolationError("min_violation_table: no root in (0, 1]");
  }
  while (hi - lo > 1e-9) {
    const double m = 0.5 * (lo + hi);
    if (value_at(m) < BellFunctional::local_bound) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MinViolationResult min_violation_table(Lab& lab, int d, StateKind kind) {
  const DimensionCache& dc = lab.dim(d);
  if (kind == StateKind::mvs && !dc.has_mvs) {
    throw OutOfRangeError("min_violation_table: mvs requires d in [3, 10]");
  }

  MinViolationResult out;
  const ComplexMatrix& rho0 = dc.state(kind).density;

  out.rounds[0] = bell_value(dc, rho0, 1.0);
  out.thresholds[0] = violation_threshold(
      out.rounds[0], [&](double l) { return bell_value(dc, rho0, l); });

  const ComplexMatrix rho1 = luders_channel(dc, rho0, out.thresholds[0]);
  out.rounds[1] = bell_value(dc, rho1, 1.0);
  out.thresholds[1] = violation_threshold(
      out.rounds[1], [&](double l) { return bell_value(dc, rho1, l); });

  const ComplexMatrix rho2 = luders_channel(dc, rho1, out.thresholds[1]);
  out.rounds[2] = bell_value(dc, rho2, 1.0);
  return out;
}

}  // namespace cglmp
