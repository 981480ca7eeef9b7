#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cglmp/errors.hpp"
#include "cglmp/noise.hpp"
#include "cglmp/solvers.hpp"

using namespace cglmp;

namespace {

// Midpoint-rule area of {(lambda, p) : I(p, lambda) > 2}.  Independent of
// the solver path: no bisection, no factorization, just the affine trace
// expansion sampled on cell centres.
double brute_force_area(Lab& lab, int d, StateKind kind, double step) {
  const DimensionCache& dc = lab.dim(d);
  const int n = static_cast<int>(std::lround(1.0 / step));
  long hits = 0;
  for (int i = 0; i < n; ++i) {
    const double lambda = (i + 0.5) * step;
    for (int j = 0; j < n; ++j) {
      const double p = (j + 0.5) * step;
      if (dc.fast_value(kind, p, lambda) > BellFunctional::local_bound)
        ++hits;
    }
  }
  return static_cast<double>(hits) * step * step;
}

}  // namespace

TEST_CASE("sharp-measurement visibility threshold is 2 / I") {
  Lab lab;
  for (int d : {2, 3, 4, 5}) {
    const double pm = p_min(lab, d, StateKind::mes);
    CHECK(std::abs(pm - 2.0 / lab.dim(d).mes_value) < 1e-9);
  }
  const double pm3 = p_min(lab, 3, StateKind::mes);
  CHECK(std::abs(pm3 - 0.69615) < 1e-5);
  const double pm3v = p_min(lab, 3, StateKind::mvs);
  CHECK(std::abs(pm3v - 2.0 / lab.dim(3).mvs_value) < 1e-9);
  CHECK(pm3v < pm3);
}

TEST_CASE("visibility threshold decreases with dimension") {
  Lab lab;
  double prev = p_min(lab, 3, StateKind::mes);
  for (int d = 4; d <= 7; ++d) {
    const double cur = p_min(lab, d, StateKind::mes);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("lambda_min anchors and duality with p_min") {
  Lab lab;
  const double l1 = lambda_min(lab, 3, StateKind::mes, 1.0);
  CHECK(std::abs(l1 - 0.69615) < 1e-5);
  CHECK(std::abs(l1 - p_min(lab, 3, StateKind::mes)) < 1e-9);

  // On the noise product line the threshold scales like p_min / p.
  const double l09 = lambda_min(lab, 3, StateKind::mes, 0.9);
  CHECK(std::abs(l09 - p_min(lab, 3, StateKind::mes) / 0.9) < 1e-6);
  CHECK(std::abs(l09 - 0.773503) < 1e-5);
}

TEST_CASE("lambda_min brackets the local bound") {
  Lab lab;
  for (int d : {3, 4, 5}) {
    for (StateKind kind : {StateKind::mes, StateKind::mvs}) {
      const DimensionCache& dc = lab.dim(d);
      for (double p : {1.0, 0.85, 0.75}) {
        const double l = lambda_min(lab, d, kind, p);
        CHECK(dc.fast_value(kind, p, l - 1e-6) < BellFunctional::local_bound);
        CHECK(dc.fast_value(kind, p, l + 1e-6) > BellFunctional::local_bound);
      }
    }
  }
}

TEST_CASE("lambda_min rejects non-violating visibilities and bad arguments") {
  Lab lab;
  CHECK_THROWS_AS(lambda_min(lab, 3, StateKind::mes, 0.5), NoViolationError);
  CHECK_THROWS_AS(lambda_min(lab, 3, StateKind::mes, 0.0), NoViolationError);
  CHECK_THROWS_AS(lambda_min(lab, 3, StateKind::mes, 1.5), OutOfRangeError);
  CHECK_THROWS_AS(lambda_min(lab, 3, StateKind::mes, -0.1), OutOfRangeError);
}

TEST_CASE("nonlocal-region area: quadrature vs closed form vs cell count") {
  Lab lab;
  for (int d : {3, 4}) {
    for (StateKind kind : {StateKind::mes, StateKind::mvs}) {
      const AnrResult r = anr(lab, d, kind);
      CHECK(std::abs(r.area - r.area_closed_form) < 1e-6);
      CHECK(std::abs(r.area - brute_force_area(lab, d, kind, 1e-3)) < 2e-3);
    }
  }
  const AnrResult mes3 = anr(lab, 3, StateKind::mes);
  const double pm = mes3.p_min;
  CHECK(std::abs(mes3.area_closed_form - (1.0 - pm + pm * std::log(pm))) == 0.0);
  CHECK(mes3.area > 0.05);
  CHECK(mes3.area < 0.06);
}

TEST_CASE("nonlocal-region area grows with dimension and with the state") {
  Lab lab;
  double prev = anr(lab, 3, StateKind::mes).area;
  for (int d = 4; d <= 6; ++d) {
    const double cur = anr(lab, d, StateKind::mes).area;
    CHECK(cur > prev);
    prev = cur;
  }
  for (int d : {3, 4, 5}) {
    CHECK(anr(lab, d, StateKind::mvs).area > anr(lab, d, StateKind::mes).area);
  }
}

TEST_CASE("q_min: crossing point ties the two rounds") {
  Lab lab;
  const QminResult r = q_min(lab, 3, StateKind::mes);
  CHECK(std::abs(r.lambda_cross - 0.787) < 1e-3);
  CHECK(std::abs(r.q_min - 0.8845) < 1e-3);

  const DimensionCache& dc = lab.dim(3);
  const double v1 = dc.fast_value(StateKind::mes, 1.0, r.lambda_cross);
  const double v2 = bell_value(
      dc, luders_channel(dc, dc.mes_state.density, r.lambda_cross), 1.0);
  CHECK(std::abs(v1 - v2) < 1e-8);
  CHECK(std::abs(r.value_at_cross - 0.5 * (v1 + v2)) < 1e-12);
  CHECK(std::abs(r.q_min * r.value_at_cross - 2.0) < 1e-12);
}

TEST_CASE("q_min agrees with a fine grid scan") {
  Lab lab;
  const QminResult fast = q_min(lab, 3, StateKind::mes);
  const QminResult slow = q_min_scan(lab, 3, StateKind::mes, 1e-4);
  CHECK(std::abs(fast.q_min - slow.q_min) < 1e-4);
  CHECK(std::abs(fast.lambda_cross - slow.lambda_cross) < 2e-4);
  CHECK_THROWS_AS(q_min_scan(lab, 3, StateKind::mes, 0.5), OutOfRangeError);
}

TEST_CASE("q_min is the double-violation visibility frontier") {
  Lab lab;
  const QminResult r = q_min(lab, 3, StateKind::mes);

  // Just above the frontier the tie sharpness gives two violating rounds.
  SequentialRun above = sequential_values(lab, 3, StateKind::mes,
                                          r.q_min + 1e-3,
                                          {r.lambda_cross, 1.0});
  CHECK(above.round_values[0] > 2.0);
  CHECK(above.round_values[1] > 2.0);

  // Just below it no sharpness yields both rounds above the bound.
  for (int i = 1; i <= 50; ++i) {
    const double l1 = 0.02 * i;
    SequentialRun below = sequential_values(lab, 3, StateKind::mes,
                                            r.q_min - 1e-3, {l1, 1.0});
    CHECK(std::min(below.round_values[0], below.round_values[1]) < 2.0);
  }
}

TEST_CASE("boundary curve endpoints, monotonicity and enclosed area") {
  Lab lab;
  const BoundaryCurve c = boundary_curve(lab, 3, StateKind::mes, 50);
  REQUIRE(c.points.size() == 50);
  CHECK(std::abs(c.points.front()[0]) < 1e-9);
  CHECK(std::abs(c.points.front()[1] - 0.303848) < 1e-5);
  CHECK(std::abs(c.points.back()[0] - (1.0 - c.p_min)) < 1e-9);
  CHECK(c.points.back()[1] == 0.0);
  for (size_t i = 1; i < c.points.size(); ++i) {
    CHECK(c.points[i][0] > c.points[i - 1][0]);
    CHECK(c.points[i][1] < c.points[i - 1][1]);
  }
  CHECK_THROWS_AS(boundary_curve(lab, 3, StateKind::mes, 1), OutOfRangeError);

  // Trapezoid area of a fine curve reproduces the quadrature: the rows
  // are uniform in p, so integrate the x column along the y column.
  const BoundaryCurve fine = boundary_curve(lab, 3, StateKind::mes, 2001);
  double area = 0.0;
  for (size_t i = 1; i < fine.points.size(); ++i) {
    const double dy = fine.points[i - 1][1] - fine.points[i][1];
    area += 0.5 * (fine.points[i - 1][0] + fine.points[i][0]) * dy;
  }
  CHECK(std::abs(area - anr(lab, 3, StateKind::mes).area) < 1e-6);
}
