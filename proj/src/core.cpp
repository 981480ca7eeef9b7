#include "cglmp/core.hpp"

#include <cmath>
#include <numbers>

namespace cglmp {

namespace {

constexpr int kMinDim = 2;
constexpr int kMaxDim = 16;   // operator builders stay small
constexpr int kMinMvs = 3;
constexpr int kMaxMvs = 10;   // validated range for the extremal state

void check_dim(int d, const char* who) {
  if (d < kMinDim || d > kMaxDim) {
    throw OutOfRangeError(std::string(who) + ": d must lie in [2, 16]");
  }
}

void check_setting(int setting, const char* who) {
  if (setting != 1 && setting != 2) {
    throw OutOfRangeError(std::string(who) + ": setting must be 1 or 2");
  }
}

MeasurementBasis make_basis(int d, Party party, int setting, double phase) {
  MeasurementBasis basis;
  basis.d = d;
  basis.party = party;
  basis.setting = setting;
  basis.phase = phase;
  basis.vectors.assign(d, std::vector<cplx>(d));
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  const double step = 2.0 * std::numbers::pi / d;
  const double sign = (party == Party::alice) ? 1.0 : -1.0;
  for (int outcome = 0; outcome < d; ++outcome) {
    for (int j = 0; j < d; ++j) {
      // alice: exp(+i 2pi j (outcome + phase)/d), bob: exp(+i 2pi j (-outcome + phase)/d)
      const double arg = step * j * (sign * outcome + phase);
      basis.vectors[outcome][j] = norm * cplx(std::cos(arg), std::sin(arg));
    }
  }
  return basis;
}

}  // namespace

const char* to_string(StateKind kind) {
  switch (kind) {
    case StateKind::mes:
      return "mes";
    case StateKind::mvs:
      return "mvs";
    default:
      return "custom";
  }
}

ComplexMatrix MeasurementBasis::projector(int outcome) const {
  if (outcome < 0 || outcome >= d) {
    throw OutOfRangeError("projector: outcome out of range");
  }
  ComplexMatrix p(d, d);
  const auto& v = vectors[outcome];
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      p(i, j) = v[i] * std::conj(v[j]);
    }
  }
  return p;
}

MeasurementBasis alice_basis(int d, int setting) {
  check_dim(d, "alice_basis");
  check_setting(setting, "alice_basis");
  const double alpha = (setting == 1) ? 0.0 : 0.5;
  return make_basis(d, Party::alice, setting, alpha);
}

MeasurementBasis bob_basis(int d, int setting) {
  check_dim(d, "bob_basis");
  check_setting(setting, "bob_basis");
  const double beta = (setting == 1) ? 0.25 : -0.25;
  return make_basis(d, Party::bob, setting, beta);
}

BellFunctional::BellFunctional(int d) : d_(d) {
  check_dim(d, "BellFunctional");
  c_.assign(static_cast<std::size_t>(4) * d * d, 0.0);

  // c[a][b] gains weight at a fixed difference (j - l) mod d.
  auto add = [this, d](int a, int b, int diff, double weight) {
    const int m = ((diff % d) + d) % d;
    for (int j = 0; j < d; ++j) {
      const int l = (j - m + d) % d;
      const std::size_t idx =
          ((static_cast<std::size_t>(a - 1) * 2 + (b - 1)) * d + j) * d + l;
      c_[idx] += weight;
    }
  };

  for (int k = 0; k <= d / 2 - 1; ++k) {
    const double w = 1.0 - 2.0 * k / (d - 1.0);
    // f(k): A1 = B1 + k, B1 = A2 + k + 1, A2 = B2 + k, B2 = A1 + k
    add(1, 1, k, w);
    add(2, 1, -(k + 1), w);
    add(2, 2, k, w);
    add(1, 2, -k, w);
    // -f(-k-1): A1 = B1 - k - 1, B1 = A2 - k, A2 = B2 - k - 1, B2 = A1 - k - 1
    add(1, 1, -(k + 1), -w);
    add(2, 1, k, -w);
    add(2, 2, -(k + 1), -w);
    add(1, 2, k + 1, -w);
  }
}

double BellFunctional::coeff(int a, int b, int j, int l) const {
  if (a < 1 || a > 2 || b < 1 || b > 2) {
    throw OutOfRangeError("coeff: settings must be 1 or 2");
  }
  if (j < 0 || j >= d_ || l < 0 || l >= d_) {
    throw OutOfRangeError("coeff: outcomes out of range");
  }
  return c_[((static_cast<std::size_t>(a - 1) * 2 + (b - 1)) * d_ + j) * d_ + l];
}

BellOperator bell_operator(int d) {
  check_dim(d, "bell_operator");
  DimensionCache dc(d);
  return BellOperator{d, dc.bell};
}

BipartiteState mes(int d) {
  check_dim(d, "mes");
  BipartiteState state;
  state.d = d;
  state.kind = StateKind::mes;
  state.density = ComplexMatrix(d * d, d * d);
  const double amp = 1.0 / d;  // (1/sqrt d)^2
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      state.density(i * d + i, j * d + j) = amp;
    }
  }
  return state;
}

BipartiteState mvs(int d) {
  if (d < kMinMvs || d > kMaxMvs) {
    throw OutOfRangeError("mvs: d must lie in [3, 10]");
  }
  DimensionCache dc(d);
  return dc.mvs_state;
}

std::vector<double> mvs_schmidt_coefficients(int d) {
  if (d < kMinMvs || d > kMaxMvs) {
    throw OutOfRangeError("mvs_schmidt_coefficients: d must lie in [3, 10]");
  }
  DimensionCache dc(d);
  return dc.mvs_schmidt;
}

ComplexMatrix partial_trace_alice(const ComplexMatrix& rho, int d) {
  if (rho.rows() != d * d || rho.cols() != d * d) {
    throw DimensionMismatchError("partial_trace_alice: shape mismatch");
  }
  ComplexMatrix out(d, d);
  for (int j = 0; j < d; ++j) {
    for (int l = 0; l < d; ++l) {
      cplx sum = 0.0;
      for (int i = 0; i < d; ++i) sum += rho(i * d + j, i * d + l);
      out(j, l) = sum;
    }
  }
  return out;
}

ComplexMatrix partial_trace_bob(const ComplexMatrix& rho, int d) {
  if (rho.rows() != d * d || rho.cols() != d * d) {
    throw DimensionMismatchError("partial_trace_bob: shape mismatch");
  }
  ComplexMatrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      cplx sum = 0.0;
      for (int j = 0; j < d; ++j) sum += rho(i * d + j, k * d + j);
      out(i, k) = sum;
    }
  }
  return out;
}

double cglmp_value(const BellFunctional& functional, const ComplexMatrix& rho,
                   const std::array<MeasurementBasis, 2>& alice,
                   const std::array<std::vector<ComplexMatrix>, 2>& bob_effects) {
  const int d = functional.dim();
  if (rho.rows() != d * d || rho.cols() != d * d) {
    throw DimensionMismatchError("cglmp_value: state dimension mismatch");
  }
  for (int a = 0; a < 2; ++a) {
    if (alice[a].d != d) {
      throw DimensionMismatchError("cglmp_value: alice basis dimension mismatch");
    }
    if (static_cast<int>(bob_effects[a].size()) != d) {
      throw DimensionMismatchError("cglmp_value: bob effect count mismatch");
    }
    for (const auto& e : bob_effects[a]) {
      if (e.rows() != d || e.cols() != d) {
        throw DimensionMismatchError("cglmp_value: bob effect dimension mismatch");
      }
    }
  }

  double value = 0.0;
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b) {
      for (int j = 0; j < d; ++j) {
        const ComplexMatrix pa = alice[a - 1].projector(j);
        for (int l = 0; l < d; ++l) {
          const double c = functional.coeff(a, b, j, l);
          if (c == 0.0) continue;
          const double prob =
              trace_product(rho, tensor(pa, bob_effects[b - 1][l])).real();
          value += c * prob;
        }
      }
    }
  }
  return value;
}

double cglmp_value(const ComplexMatrix& rho, int d) {
  check_dim(d, "cglmp_value");
  DimensionCache dc(d);
  return bell_value(dc, rho, 1.0);
}

DimensionCache::DimensionCache(int d_in) : d(d_in), functional(d_in) {
  check_dim(d_in, "DimensionCache");
  alice = {alice_basis(d, 1), alice_basis(d, 2)};
  bob = {bob_basis(d, 1), bob_basis(d, 2)};
  for (int s = 0; s < 2; ++s) {
    alice_proj[s].reserve(d);
    bob_proj[s].reserve(d);
    for (int outcome = 0; outcome < d; ++outcome) {
      alice_proj[s].push_back(alice[s].projector(outcome));
      bob_proj[s].push_back(bob[s].projector(outcome));
    }
  }

  const int n = d * d;
  bell = ComplexMatrix(n, n);
  bell_iso = ComplexMatrix(n, n);
  ComplexMatrix iso(d, d);
  for (int i = 0; i < d; ++i) iso(i, i) = 1.0 / d;
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b) {
      for (int j = 0; j < d; ++j) {
        for (int l = 0; l < d; ++l) {
          const double c = functional.coeff(a, b, j, l);
          if (c == 0.0) continue;
          ComplexMatrix term = tensor(alice_proj[a - 1][j], bob_proj[b - 1][l]);
          term *= cplx(c, 0.0);
          bell += term;
          ComplexMatrix term_iso = tensor(alice_proj[a - 1][j], iso);
          term_iso *= cplx(c, 0.0);
          bell_iso += term_iso;
        }
      }
    }
  }
  if (!bell.all_finite() || hermiticity_residual(bell) > 1e-10) {
    throw Error("DimensionCache: Bell operator failed validation");
  }

  mes_state = mes(d);
  mes_value = trace_product(mes_state.density, bell).real();
  mes_iso = trace_product(mes_state.density, bell_iso).real();
  unif_value = bell.trace().real() / n;
  unif_iso = bell_iso.trace().real() / n;

  if (d >= kMinMvs && d <= kMaxMvs) {
    auto eig = hermitian_eig(bell);
    if (eig.eigenvalues[0] - eig.eigenvalues[1] < 1e-8) {
      throw DegenerateTopError("mvs: top eigenvalue is degenerate");
    }
    // The extremal eigenvector must be Schmidt-diagonal in the
    // computational basis with real positive coefficients.
    std::vector<cplx> psi(n);
    for (int i = 0; i < n; ++i) psi[i] = eig.eigenvectors(i, 0);
    mvs_schmidt.assign(d, 0.0);
    double off = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const cplx amp = psi[i * d + j];
        if (i == j) {
          mvs_schmidt[i] = amp.real();
          off = std::max(off, std::abs(amp.imag()));
        } else {
          off = std::max(off, std::abs(amp));
        }
      }
    }
    if (off > 1e-8) {
      throw Error("mvs: eigenvector is not Schmidt-diagonal");
    }
    for (double sc : mvs_schmidt) {
      if (sc <= 0.0) throw Error("mvs: Schmidt coefficient not positive");
    }

    mvs_state.d = d;
    mvs_state.kind = StateKind::mvs;
    mvs_state.density = ComplexMatrix(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        mvs_state.density(i, j) = psi[i] * std::conj(psi[j]);
      }
    }
    mvs_value = eig.eigenvalues[0];
    mvs_iso = trace_product(mvs_state.density, bell_iso).real();
    has_mvs = true;
  }
}

const BipartiteState& DimensionCache::state(StateKind kind) const {
  switch (kind) {
    case StateKind::mes:
      return mes_state;
    case StateKind::mvs:
      if (!has_mvs) {
        throw OutOfRangeError("state: mvs is only available for d in [3, 10]");
      }
      return mvs_state;
    default:
      throw OutOfRangeError("state: no cached state for this kind");
  }
}

double DimensionCache::state_value(StateKind kind) const {
  if (kind == StateKind::mes) return mes_value;
  if (kind == StateKind::mvs && has_mvs) return mvs_value;
  throw OutOfRangeError("state_value: unsupported state kind");
}

double DimensionCache::state_iso(StateKind kind) const {
  if (kind == StateKind::mes) return mes_iso;
  if (kind == StateKind::mvs && has_mvs) return mvs_iso;
  throw OutOfRangeError("state_iso: unsupported state kind");
}

double DimensionCache::fast_value(StateKind kind, double p,
                                  double lambda) const {
  const double sharp = p * state_value(kind) + (1.0 - p) * unif_value;
  const double iso = p * state_iso(kind) + (1.0 - p) * unif_iso;
  return lambda * sharp + (1.0 - lambda) * iso;
}

double bell_value(const DimensionCache& dc, const ComplexMatrix& rho,
                  double lambda) {
  if (rho.rows() != dc.d * dc.d || rho.cols() != dc.d * dc.d) {
    throw DimensionMismatchError("bell_value: state dimension mismatch");
  }
  const double sharp = trace_product(rho, dc.bell).real();
  if (lambda == 1.0) return sharp;
  const double iso = trace_product(rho, dc.bell_iso).real();
  return lambda * sharp + (1.0 - lambda) * iso;
}

const DimensionCache& Lab::dim(int d) {
  Slot* slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    slot = &cache_[d];  // map nodes are address-stable
  }
  // Build outside the map lock so distinct dimensions construct in
  // parallel; call_once rethrows and stays retryable on bad input.
  std::call_once(slot->built,
                 [&] { slot->cache = std::make_unique<DimensionCache>(d); });
  return *slot->cache;
}

}  // namespace cglmp
