// Unit tests for contour assembly: the opening angle and its verified
// preimage trace, circle panelization, leg layout and truncation, and the
// conjugation symmetry of the whole set.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "pi2/rh_contour.hpp"

using namespace pi2;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLegAngle = 6.0 * kPi / 7.0;

double hat_z0(const ContourSet& c) { return c.G.z0; }

cplx exit_up(const ContourSet& c) {
  return c.G.z0 + c.delta * std::polar(1.0, kLegAngle);
}

}  // namespace

TEST_CASE("opening angle: frozen value, window, conjugation") {
  const ContourSet c = build_contour(100.0, 0.0);
  CHECK(c.sigma == doctest::Approx(2.63283472343956).epsilon(1e-12));
  CHECK(std::abs(c.sigma - kLegAngle) < kPi / 14.0);
  // Real phase coefficients force the lower exit to the conjugate angle.
  const cplx exit_low = c.G.z0 + c.delta * std::polar(1.0, -kLegAngle);
  CHECK(std::abs(std::arg(conformal_f(exit_low, c.G)) + c.sigma) <= 1e-12);
}

TEST_CASE("preimage trace lands on the prescribed exit point") {
  struct Case {
    double x, T;
  };
  for (const Case& k : {Case{100.0, 0.0}, Case{50.0, 1.0}, Case{10.0, 2.0},
                        Case{-100.0, 0.0}, Case{1e6, 0.0}, Case{1e6, 1.0}}) {
    CAPTURE(k.x);
    CAPTURE(k.T);
    const ContourSet c = build_contour(k.x, k.T);
    REQUIRE(!c.sigma_preimage.empty());
    CHECK(std::abs(c.sigma_preimage.back() - exit_up(c)) <= 1e-10);
  }
}

TEST_CASE("preimage trace is an arg f = sigma curve growing out of z0") {
  const ContourSet c = build_contour(50.0, 1.0);
  double prev = 0.0;
  for (std::size_t i = 0; i < c.sigma_preimage.size(); i += 7) {
    const cplx f = conformal_f(c.sigma_preimage[i], c.G);
    CHECK(std::abs(std::arg(f) - c.sigma) <= 1e-10);
    CHECK(std::abs(f) > prev);
    prev = std::abs(f);
    CHECK(std::abs(c.sigma_preimage[i] - hat_z0(c)) <= c.delta * (1.0 + 1e-9));
  }
}

TEST_CASE("circle: fourteen clockwise arcs chained through the junctions") {
  const ContourSet c = build_contour(100.0, 0.0);
  REQUIRE(c.circle.size() == 14);
  const cplx center{hat_z0(c), 0.0};
  for (std::size_t i = 0; i < c.circle.size(); ++i) {
    const Panel& p = c.circle[i];
    CHECK(p.ang1 < p.ang0);                    // clockwise
    CHECK(p.ang0 - p.ang1 <= 0.46);            // span cap
    CHECK(std::abs(p.center - center) == 0.0);
    CHECK(p.radius == doctest::Approx(c.delta));
    for (int j = 0; j < kPanelNodes; ++j)
      CHECK(std::abs(std::abs(p.node[j] - center) - c.delta) <= 1e-13);
  }
  // Chain continuity including the -pi/+pi seam, closing back at angle 0.
  for (std::size_t i = 0; i + 1 < c.circle.size(); ++i) {
    const cplx e = center + c.delta * std::polar(1.0, c.circle[i].ang1);
    const cplx s =
        center + c.delta * std::polar(1.0, c.circle[i + 1].ang0);
    CHECK(std::abs(e - s) <= 1e-12);
  }
  CHECK(c.circle.front().ang0 == 0.0);
  CHECK(c.circle.back().ang1 == 0.0);
  // Junction angles appear as panel boundaries.
  bool hit_up = false, hit_low = false, hit_pi = false;
  double span = 0.0;
  for (const Panel& p : c.circle) {
    span += p.ang0 - p.ang1;
    for (double a : {p.ang0, p.ang1}) {
      hit_up = hit_up || std::abs(a - kLegAngle) <= 1e-14;
      hit_low = hit_low || std::abs(a + kLegAngle) <= 1e-14;
      hit_pi = hit_pi || std::abs(std::abs(a) - kPi) <= 1e-14;
    }
  }
  CHECK(hit_up);
  CHECK(hit_low);
  CHECK(hit_pi);
  CHECK(span == doctest::Approx(2.0 * kPi).epsilon(1e-14));
}

TEST_CASE("legs: rays at the fixed angles, truncated by the decay exponent") {
  const ContourSet c = build_contour(10.0, 0.0);
  REQUIRE(!c.leg_upper.empty());
  REQUIRE(!c.leg_lower.empty());
  REQUIRE(!c.leg_right.empty());
  const cplx center{hat_z0(c), 0.0};

  // Every node sits on its ray; inward ordering for the oblique legs.
  for (const Panel& p : c.leg_upper)
    for (int j = 0; j < kPanelNodes; ++j)
      CHECK(std::abs(std::arg(p.node[j] - center) - kLegAngle) <= 1e-13);
  for (const Panel& p : c.leg_right) {
    CHECK(std::abs(std::imag(p.a)) == 0.0);
    CHECK(std::real(p.b) > std::real(p.a));  // away from the disk
  }
  CHECK(std::abs(c.leg_upper.front().a - center) >
        std::abs(c.leg_upper.front().b - center));
  // Legs attach exactly at the junction points.
  CHECK(std::abs(c.leg_upper.back().b - exit_up(c)) <= 1e-12);
  CHECK(std::abs(c.leg_lower.back().b - std::conj(exit_up(c))) <= 1e-12);
  CHECK(std::abs(c.leg_right.front().a - (center + c.delta)) <= 1e-12);
  // Mirror symmetry of the lower leg.
  REQUIRE(c.leg_lower.size() == c.leg_upper.size());
  for (std::size_t i = 0; i < c.leg_upper.size(); ++i) {
    CHECK(std::abs(c.leg_lower[i].a - std::conj(c.leg_upper[i].a)) <= 1e-13);
    CHECK(std::abs(c.leg_lower[i].b - std::conj(c.leg_upper[i].b)) <= 1e-13);
  }

  // Truncation endpoints carry exponent >= 45 (jump below ~1e-18), and the
  // last laid panel's start is still below the cut (no over-truncation).
  const double pref = 2.0 * std::pow(10.0, 7.0 / 6.0);
  auto expo = [&](cplx zeta) {
    return pref * std::abs(std::real(g_eval(zeta, c.G)));
  };
  CHECK(expo(c.leg_upper.front().a) >= 45.0);
  CHECK(expo(c.leg_right.back().b) >= 45.0);
  CHECK(expo(c.leg_upper.front().b) < 45.0);
  CHECK(expo(c.leg_right.back().a) < 45.0);
  CHECK(c.truncation_radius ==
        doctest::Approx(std::max(std::abs(c.leg_upper.front().a - center),
                                 std::abs(c.leg_right.back().b - center))));
  // First panel length 0.4 at the disk, growing by 1.9.
  CHECK(std::abs(c.leg_right.front().b - c.leg_right.front().a) ==
        doctest::Approx(0.4));
  if (c.leg_right.size() >= 2)
    CHECK(std::abs(c.leg_right[1].b - c.leg_right[1].a) ==
          doctest::Approx(0.76));
}

TEST_CASE("legs vanish once the jump is identity at the disk already") {
  const ContourSet c = build_contour(100.0, 0.0);
  CHECK(c.leg_upper.empty());
  CHECK(c.leg_lower.empty());
  CHECK(c.leg_right.empty());
  CHECK(c.truncation_radius == doctest::Approx(c.delta));
  // ... because the exponent already exceeds the cut at t = delta.
  const double pref = 2.0 * std::pow(100.0, 7.0 / 6.0);
  const cplx start = c.G.z0 + c.delta * std::polar(1.0, kLegAngle);
  CHECK(pref * std::abs(std::real(g_eval(start, c.G))) > 45.0);
}

TEST_CASE("negative x mirrors the geometry to the positive z0 branch") {
  const ContourSet c = build_contour(-100.0, 0.0);
  CHECK(hat_z0(c) == doctest::Approx(3.634241185664279).epsilon(1e-13));
  CHECK(std::abs(c.sigma - kLegAngle) < kPi / 14.0);
  CHECK(c.circle.size() == 14);
}

TEST_CASE("error paths: range guard, window guard, bad radius") {
  CHECK_THROWS_AS(build_contour(5.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(build_contour(-9.9, 0.0), std::domain_error);
  CHECK_THROWS_AS(build_contour(100.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_contour(100.0, 0.0, 2.5), std::invalid_argument);
  // A doctored phase bundle whose f rotates the exit angle out of the
  // window trips the mismatch guard.
  GFunction bad = solve_z0(100.0, 0.0);
  bad.c2 = 3.0;
  bad.c3 = 0.05;
  CHECK_THROWS_WITH_AS(build_contour(bad), "contour mismatch",
                       std::runtime_error);
}
