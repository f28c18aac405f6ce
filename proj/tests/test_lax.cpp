// Unit tests for the residual operator, the Lax matrices, the
// compatibility-defect identity D = -F sigma3, and the Stokes product.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "pi2/lax.hpp"
#include "pi2/mat2.hpp"

using namespace pi2;

namespace {

Jet4 random_jet(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  Jet4 j;
  j.y = u(rng);
  j.y_x = u(rng);
  j.y_xx = u(rng);
  j.y_xxx = u(rng);
  j.y_xxxx = u(rng);
  j.x = u(rng);
  j.T = u(rng);
  return j;
}

double jet_norm(const Jet4& j) {
  double r = 0.0;
  for (double v : {j.y, j.y_x, j.y_xx, j.y_xxx, j.y_xxxx, j.x, j.T})
    r = std::max(r, std::abs(v));
  return r;
}

}  // namespace

TEST_CASE("residual: plug-in values and the solved fourth derivative") {
  Jet4 j;
  j.x = 5.0;
  j.T = 3.0;
  CHECK(pi2_residual(j) == 5.0);  // zero jet: only x survives

  j = Jet4{};
  j.y = 2.0;
  j.T = 1.0;
  j.x = 2.0 / 3.0;  // x = T y - y^3/6 up to one rounding of 2/3 + 8/6
  CHECK(std::abs(pi2_residual(j)) <= 3e-16);
  j.x = 1.0;
  CHECK(std::abs(pi2_residual(j) - 1.0 / 3.0) < 1e-15);

  // y_xxxx from the solved form zeroes the residual for any jet prefix.
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    Jet4 r;
    r.y = u(rng);
    r.y_x = u(rng);
    r.y_xx = u(rng);
    r.y_xxx = u(rng);
    r.x = u(rng);
    r.T = u(rng);
    r.y_xxxx = pi2_fourth_derivative(r.y, r.y_x, r.y_xx, r.x, r.T);
    CHECK(std::abs(pi2_residual(r)) <= 1e-12 * (1.0 + std::abs(r.y_xxxx)));
  }
}

TEST_CASE("lax U: pinned entries and exact tracelessness") {
  Jet4 zero;
  zero.T = 0.0;
  CHECK(mat2_norm(lax_U(cplx(1.0, 0.0), zero) -
                  mat2(0.0, 1.0 / 30.0, 1.0 / 30.0, 0.0)) == 0.0);

  zero.T = 1.0;
  CHECK(mat2_norm(lax_U(cplx(0.0, 0.0), zero) - mat2(0.0, -0.5, 0.0, 0.0)) ==
        0.0);

  zero.T = 0.0;
  zero.x = 1.0;
  CHECK(mat2_norm(lax_U(cplx(0.0, 0.0), zero) - mat2(0.0, 0.0, 1.0, 0.0)) ==
        0.0);

  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const Jet4 j = random_jet(rng);
    const cplx zeta(u(rng), u(rng));
    const Mat2C U = lax_U(zeta, j);
    CHECK(U(0, 0) + U(1, 1) == cplx(0.0, 0.0));  // exact: U11 = -U22
  }
}

TEST_CASE("lax W: pinned entries and exact determinant") {
  CHECK(mat2_norm(lax_W(cplx(3.0, 0.0), 1.0) - mat2(0.0, 1.0, 1.0, 0.0)) ==
        0.0);
  CHECK(mat2_norm(lax_W(cplx(0.0, 0.0), 0.0) - mat2(0.0, 1.0, 0.0, 0.0)) ==
        0.0);
  CHECK(mat2_norm(lax_W(cplx(5.0, 0.0), 2.5) - mat2(0.0, 1.0, 0.0, 0.0)) ==
        0.0);

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const cplx zeta(u(rng), u(rng));
    const double y = u(rng);
    CHECK(mat2_det(lax_W(zeta, y)) == -(zeta - 2.0 * y));
  }
}

TEST_CASE("compatibility defect: equals -residual * sigma3") {
  // Zero jet at x = 5: D = [[-5,0],[0,5]] for any zeta.
  Jet4 zero;
  zero.x = 5.0;
  for (const cplx& zeta : {cplx(0.0, 0.0), cplx(2.0, -1.0), cplx(17.0, 4.0)}) {
    const Mat2C D = compatibility_defect(zeta, zero);
    const double scale = 1.0 + std::pow(std::abs(zeta), 3);
    CHECK(mat2_norm(D + 5.0 * sigma3()) <= 1e-11 * scale);
  }

  // Residual-zero jets give a zero defect.
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    Jet4 j = random_jet(rng);
    j.y_xxxx = pi2_fourth_derivative(j.y, j.y_x, j.y_xx, j.x, j.T);
    const cplx zeta(u(rng), u(rng));
    const double scale =
        1.0 + std::pow(jet_norm(j), 3) + std::pow(std::abs(zeta), 3);
    CHECK(mat2_norm(compatibility_defect(zeta, j)) <= 1e-9 * scale);
  }
}

TEST_CASE("compatibility defect: 1e3 random jets, zeta-independence") {
  std::mt19937 rng(271828);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst_rel = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Jet4 j = random_jet(rng);
    const cplx zeta(u(rng), u(rng));
    const double F = pi2_residual(j);
    const Mat2C D = compatibility_defect(zeta, j);
    const double scale =
        1.0 + std::pow(jet_norm(j), 3) + std::pow(std::abs(zeta), 3);
    const double dev = mat2_norm(D + F * sigma3());
    worst_rel = std::max(worst_rel, dev / scale);
    // Off-diagonal entries vanish; diagonal is -+F.
    CHECK(std::abs(D(0, 1)) <= 1e-10 * scale);
    CHECK(std::abs(D(1, 0)) <= 1e-10 * scale);
  }
  CHECK(worst_rel <= 1e-9);

  for (int k = 0; k < 50; ++k) {
    const Jet4 j = random_jet(rng);
    const Mat2C d0 = compatibility_defect(cplx(0.0, 0.0), j);
    const Mat2C d1 = compatibility_defect(cplx(17.0, 4.0), j);
    const double scale = 1.0 + std::pow(jet_norm(j), 3) + std::pow(17.5, 3);
    CHECK(mat2_norm(d0 - d1) <= 1e-10 * scale);
  }
}

TEST_CASE("stokes relation: chosen multipliers satisfy it exactly") {
  const std::array<cplx, 7> chosen = {cplx(-1), cplx(0), cplx(0), cplx(1),
                                      cplx(0),  cplx(0), cplx(-1)};
  CHECK(mat2_norm(stokes_relation_check(chosen) - rotation_j()) == 0.0);

  const std::array<cplx, 7> zeros = {};
  CHECK(mat2_norm(stokes_relation_check(zeros) - mat2_identity()) == 0.0);
  CHECK(mat2_norm(stokes_relation_check(zeros) - rotation_j()) > 0.5);

  std::array<cplx, 7> perturbed = chosen;
  perturbed[3] = cplx(1.0 + 1e-3, 0.0);  // s0 slot
  CHECK(mat2_norm(stokes_relation_check(perturbed) - rotation_j()) >= 1e-4);
}
