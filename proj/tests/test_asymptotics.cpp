// Unit tests for the phase functions: theta/theta_hat and their scaling
// identity, the z0 cubic branch, the g-function (head cancellation, tail
// decay), the conformal map f, the leading law, and the Re g sign scan.
// Pinned decimals were generated with 40-digit arithmetic.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "pi2/asymptotics.hpp"

using namespace pi2;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCbrt6 = 1.8171205928321396589;

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Least-squares slope of log|v| against log t.
double fit_slope(const std::vector<double>& t, const std::vector<double>& v) {
  const std::size_t n = t.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double X = std::log(t[i]);
    const double Y = std::log(std::abs(v[i]));
    sx += X;
    sy += Y;
    sxx += X * X;
    sxy += X * Y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("theta: monomial spot values") {
  CHECK(rel_err(theta(cplx(1.0, 0.0), 0.0, 0.0), 1.0 / 105.0) < 1e-15);
  CHECK(rel_err(theta(cplx(1.0, 0.0), 2.0, 3.0), 1.0 / 105.0 - 1.0 + 2.0) <
        1e-14);
  // zeta = 4: 4^{7/2} = 128, 4^{3/2} = 8, 4^{1/2} = 2.
  CHECK(rel_err(theta(cplx(4.0, 0.0), 0.25, 0.5),
                128.0 / 105.0 - (0.5 / 3.0) * 8.0 + 0.25 * 2.0) < 1e-14);
}

TEST_CASE("theta: cut side limits on the negative axis") {
  const cplx zeta(-1.0, 0.0);
  const cplx tp = theta(zeta, 0.0, 0.0, +1);
  const cplx tm = theta(zeta, 0.0, 0.0, -1);
  // (-1)^{7/2} from above is e^{7 i pi/2} = -i.
  CHECK(std::abs(tp - cplx(0.0, -1.0 / 105.0)) < 1e-16);
  CHECK(std::abs(tp + tm) < 1e-16);
  CHECK_THROWS_AS((void)theta(zeta, 0.0, 0.0), std::domain_error);

  // Off the cut the side argument is inert.
  const cplx off(-1.0, 0.5);
  CHECK(theta(off, 1.0, 2.0, +1) == theta(off, 1.0, 2.0, -1));
  CHECK(theta(off, 1.0, 2.0, 0) == theta(off, 1.0, 2.0, +1));
}

TEST_CASE("theta_hat: |x|^{7/6} theta_hat(zeta) = theta(|x|^{1/3} zeta)") {
  const cplx pts[] = {cplx(2.0, 1.0), cplx(0.3, -2.0), cplx(-5.0, 0.7),
                      cplx(0.05, 0.01)};
  const double xs[] = {100.0, 100.0, 7.3, -55.5};
  const double Ts[] = {1.0, -2.0, 0.0, 1.7};
  for (int c = 0; c < 4; ++c) {
    const double x = xs[c], T = Ts[c];
    const double scale = std::cbrt(std::abs(x));
    for (const cplx& zeta : pts) {
      const cplx lhs = std::pow(std::abs(x), 7.0 / 6.0) * theta_hat(zeta, x, T);
      const cplx rhs = theta(scale * zeta, x, T);
      CHECK(rel_err(lhs, rhs) < 1e-12);
    }
  }
  CHECK_THROWS_AS((void)theta_hat(cplx(1.0, 0.0), 0.0, 1.0),
                  std::domain_error);
}

TEST_CASE("z0: pinned values") {
  CHECK(rel_err(solve_z0(100.0, 0.0).z0, -2.0 * kCbrt6) < 1e-13);
  CHECK(rel_err(solve_z0(-7.0, 0.0).z0, 2.0 * kCbrt6) < 1e-13);
  CHECK(rel_err(solve_z0(100.0, 1.0).z0, -3.7363896124241858) < 1e-13);
  CHECK(rel_err(solve_z0(100.0, -2.0).z0, -3.4301194210984279) < 1e-13);
  CHECK(rel_err(solve_z0(50.0, 1.0).z0, -3.7963303512971745) < 1e-13);
  CHECK(rel_err(solve_z0(10.0, 2.0).z0, -4.5664734838505418) < 1e-13);

  const GFunction G = solve_z0(100.0, 0.0);
  CHECK(rel_err(G.c3, 0.55032120814910445) < 1e-13);  // 6^{-1/3}
  CHECK(G.c1 == 1.0 / 105.0);
  CHECK(G.c2 == G.z0 / 30.0);
  CHECK(G.z0_hat == -2.0 * kCbrt6);
  CHECK_THROWS_AS((void)solve_z0(0.0, 1.0), std::domain_error);
}

TEST_CASE("z0: antisymmetry, residual, and branch sign on randoms") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> ulog(0.0, 8.0);
  std::uniform_real_distribution<double> uT(-10.0, 10.0);
  std::uniform_int_distribution<int> usign(0, 1);
  for (int k = 0; k < 1000; ++k) {
    const double x = (usign(rng) ? 1.0 : -1.0) * std::pow(10.0, ulog(rng));
    const double T = uT(rng);
    const GFunction G = solve_z0(x, T);
    const double sgn = x < 0 ? -1.0 : 1.0;
    const double t_hat = T * std::pow(std::abs(x), -2.0 / 3.0);

    // Residual of the defining cubic and the branch-sign rule.
    const double res =
        G.z0 * G.z0 * G.z0 - 24.0 * t_hat * G.z0 + 48.0 * sgn;
    CHECK(std::abs(res) <=
          1e-10 * std::max(1.0, std::abs(G.z0 * G.z0 * G.z0)));
    CHECK(G.z0 * sgn < 0.0);

    // Rearranged cubic: T_hat = z0^2/24 + 2 sgn / z0.
    const double t_back = G.z0 * G.z0 / 24.0 + 2.0 * sgn / G.z0;
    CHECK(std::abs(t_back - t_hat) <= 1e-11 * std::max(1.0, std::abs(t_hat)));

    // c3 is positive (the conformal prefactor never degenerates).
    CHECK(G.c3 > 0.0);

    // Antisymmetry in x at fixed T: z0(-x,T) = -z0(x,T) (the cubic's
    // middle term -24 T_hat z is even under (z, sgn) -> (-z, -sgn)).
    CHECK(rel_err(solve_z0(-x, T).z0, -G.z0) < 1e-12);
  }
}

TEST_CASE("z0: two-term expansion error decays like x^{-2}") {
  CHECK(z0_expansion(1e6, 0.0) == -2.0 * kCbrt6);
  // T-coefficient: z0(100,1) - z0_hat ~ -(2/3) 6^{2/3} 100^{-2/3}.
  CHECK(std::abs(z0_expansion(100.0, 1.0) -
                 (-2.0 * kCbrt6 - 2.2012848325964178 *
                                      std::pow(100.0, -2.0 / 3.0))) < 1e-15);

  std::vector<double> xs, errs;
  for (double x : {1e2, 1e3, 1e4, 1e5, 1e6}) {
    xs.push_back(x);
    errs.push_back(std::abs(solve_z0(x, 1.0).z0 - z0_expansion(x, 1.0)));
  }
  const double slope = fit_slope(xs, errs);
  CHECK(slope <= -1.8);
  CHECK(slope >= -2.3);
}

TEST_CASE("g: unit-offset value and agreement with principal powers") {
  const GFunction G = solve_z0(100.0, 1.0);
  CHECK(rel_err(g_eval(cplx(G.z0 + 1.0, 0.0), G), G.c1 + G.c2 + G.c3) < 1e-14);

  const cplx u = 4.0 * std::exp(cplx(0.0, kPi / 3.0));
  const cplx direct =
      G.c1 * std::pow(u, 3.5) + G.c2 * std::pow(u, 2.5) + G.c3 * std::pow(u, 1.5);
  CHECK(rel_err(g_eval(cplx(G.z0, 0.0) + u, G), direct) < 1e-13);
}

TEST_CASE("g: side limits on the cut sum to zero") {
  const GFunction G = solve_z0(100.0, 0.0);
  const cplx zeta(G.z0 - 2.0, 0.0);
  const cplx gp = g_eval(zeta, G, +1);
  const cplx gm = g_eval(zeta, G, -1);
  CHECK(std::abs(gp + gm) < 5e-15);
  CHECK(std::abs(gp - std::conj(gm)) < 5e-15);
  CHECK(std::abs(gp.real()) < 5e-15);  // pure imaginary side values
  CHECK_THROWS_AS((void)g_eval(zeta, G), std::domain_error);
}

TEST_CASE("g - theta_hat: head coefficients vanish identically") {
  for (auto [x, T] : {std::pair{100.0, 1.0}, std::pair{-50.0, 2.0},
                      std::pair{7.0, -3.0}, std::pair{-1000.0, 0.0}}) {
    const GFunction G = solve_z0(x, T);
    const double z0 = G.z0;
    const double sgn = x < 0 ? -1.0 : 1.0;
    const double t_hat = T * std::pow(std::abs(x), -2.0 / 3.0);
    // Coefficients of zeta^{7/2}, zeta^{5/2}, zeta^{3/2}, zeta^{1/2} in the
    // binomial expansion of g about infinity, minus theta_hat's.
    const double p7 = G.c1 - 1.0 / 105.0;
    const double p5 = -3.5 * G.c1 * z0 + G.c2;
    const double p3 =
        4.375 * G.c1 * z0 * z0 - 2.5 * G.c2 * z0 + G.c3 + t_hat / 3.0;
    const double p1 = -2.1875 * G.c1 * z0 * z0 * z0 +
                      1.875 * G.c2 * z0 * z0 - 1.5 * G.c3 * z0 - sgn;
    CHECK(std::abs(p7) == 0.0);
    CHECK(std::abs(p5) < 1e-15 * std::max(1.0, std::abs(z0)));
    CHECK(std::abs(p3) < 1e-14 * std::max(1.0, z0 * z0));
    CHECK(std::abs(p1) < 1e-13 * std::max(1.0, std::abs(z0 * z0 * z0)));
  }
}

TEST_CASE("g - theta_hat: b0 tail coefficient and -1/2 decay") {
  const GFunction G = solve_z0(100.0, 0.0);
  // b0 = z0^4/384 - sgn z0/4 = (3/4) 6^{1/3} at T = 0, x > 0.
  CHECK(rel_err(g_tail_b0(G), 0.75 * kCbrt6) < 1e-13);

  CHECK(rel_err(g_minus_theta_hat(cplx(1e6, 0.0), G) * std::sqrt(1e6),
                g_tail_b0(G)) < 1e-5);
  CHECK(rel_err(g_minus_theta_hat(cplx(1e4, 0.0), G) * std::sqrt(1e4),
                g_tail_b0(G)) < 1e-3);

  // Series path and plain subtraction agree where both are accurate.
  const cplx probe = 35.0 * std::exp(cplx(0.0, 0.3));
  const cplx direct = g_eval(probe, G) - theta_hat(probe, G.x, G.T);
  CHECK(rel_err(g_minus_theta_hat(probe, G), direct) < 1e-10);

  for (double T : {0.0, 1.0}) {
    const GFunction Gt = solve_z0(100.0, T);
    std::vector<double> zs, vals;
    for (double z : {1e2, 3.16e2, 1e3, 3.16e3, 1e4, 1e5, 1e6}) {
      zs.push_back(z);
      vals.push_back(std::abs(g_minus_theta_hat(cplx(z, 0.0), Gt)));
    }
    const double slope = fit_slope(zs, vals);
    CHECK(slope <= -0.45);
    CHECK(slope >= -0.55);

    // Same slope from plain subtraction on the noise-safe range.
    std::vector<double> zd, vd;
    for (double z : {1e2, 3.16e2, 1e3, 3.16e3, 1e4}) {
      zd.push_back(z);
      vd.push_back(std::abs(g_eval(cplx(z, 0.0), Gt) -
                            theta_hat(cplx(z, 0.0), Gt.x, Gt.T)));
    }
    const double slope_direct = fit_slope(zd, vd);
    CHECK(slope_direct <= -0.45);
    CHECK(slope_direct >= -0.55);
  }
}

TEST_CASE("conformal map: derivatives at z0 and (2/3) f^{3/2} = g") {
  const GFunction G = solve_z0(100.0, 0.0);
  CHECK(std::abs(conformal_f(cplx(G.z0, 0.0), G)) == 0.0);
  CHECK(rel_err(conformal_f_prime_z0(G), 0.87997771220758214) < 1e-13);

  // Finite differences for f' and f''.
  const double h = 1e-4;
  const cplx z0c(G.z0, 0.0);
  const cplx fp =
      (conformal_f(z0c + h, G) - conformal_f(z0c - h, G)) / (2.0 * h);
  CHECK(rel_err(fp, conformal_f_prime_z0(G)) < 1e-7);
  const cplx fpp =
      (conformal_f(z0c + h, G) + conformal_f(z0c - h, G)) / (h * h);
  CHECK(rel_err(fpp, conformal_f_second_z0(G)) < 1e-5);

  for (auto [x, T] : {std::pair{100.0, 0.0}, std::pair{100.0, 1.0},
                      std::pair{-60.0, -1.0}}) {
    const GFunction Gl = solve_z0(x, T);
    const cplx z0l(Gl.z0, 0.0);
    for (int j = 0; j < 20; ++j) {
      const double phi = (j + 0.5) * 2.0 * kPi / 20.0;
      const cplx zeta = z0l + 0.9 * std::exp(cplx(0.0, phi));
      const cplx f = conformal_f(zeta, Gl);
      CHECK(rel_err((2.0 / 3.0) * std::pow(f, 1.5), g_eval(zeta, Gl)) < 1e-11);
    }
  }
}

TEST_CASE("conformal map: symmetry, injectivity, orientation") {
  const GFunction G = solve_z0(100.0, 1.0);
  const cplx z0c(G.z0, 0.0);

  // Real on the real diameter, conjugation-symmetric, upper -> upper.
  for (double u : {-1.2, -0.7, 0.7, 1.2})
    CHECK(std::abs(conformal_f(z0c + u, G).imag()) < 1e-15);
  for (const cplx& u : {cplx(0.4, 0.8), cplx(-0.9, 0.3)}) {
    const cplx f = conformal_f(z0c + u, G);
    CHECK(std::abs(f - std::conj(conformal_f(z0c + std::conj(u), G))) <
          1e-14);
    CHECK(f.imag() > 0.0);
  }

  // Injectivity on a disk mesh: images separate at least like the points.
  std::vector<cplx> us;
  for (double r : {0.3, 0.7, 1.1})
    for (int j = 0; j < 17; ++j)
      us.push_back(r * std::exp(cplx(0.0, -kPi + (j + 0.5) * 2.0 * kPi / 17.0)));
  for (std::size_t a = 0; a < us.size(); ++a)
    for (std::size_t b = a + 1; b < us.size(); ++b) {
      const cplx fa = conformal_f(z0c + us[a], G);
      const cplx fb = conformal_f(z0c + us[b], G);
      CHECK(std::abs(fa - fb) > 0.2 * std::abs(us[a] - us[b]));
    }

  // The x -> -x mirror keeps f'(z0): z0 flips sign and c3 is invariant.
  const GFunction Gm = solve_z0(-100.0, 1.0);
  CHECK(conformal_f_prime_z0(Gm) == conformal_f_prime_z0(G));

  // At a zero of q the map is not conformal and says so.
  const double disc = 4.0 * G.c1 * G.c3 - G.c2 * G.c2;
  REQUIRE(disc > 0.0);
  const cplx u_root =
      cplx(-G.c2, std::sqrt(disc)) / (2.0 * G.c1);
  CHECK_THROWS_AS((void)conformal_f(z0c + u_root, G), std::runtime_error);
  CHECK_THROWS_WITH((void)conformal_f(z0c + u_root, G),
                    "f not conformal here");
}

TEST_CASE("leading law y ~ (1/2) z0 |x|^{1/3}") {
  CHECK(rel_err(y_leading(1000.0, 0.0), -std::cbrt(6000.0)) < 1e-13);
  CHECK(rel_err(y_leading(-1000.0, 0.0), std::cbrt(6000.0)) < 1e-13);
  CHECK(rel_err(y_leading(1e6, 0.0), -std::cbrt(6e6)) < 1e-13);

  // Two-term law: y ~ -cbrt(6x) - (1/3) 6^{2/3} T x^{-1/3} for x > 0.
  const double two_term =
      -std::cbrt(6000.0) - (0.5 * 2.2012848325964178) * std::pow(1000.0, -1.0 / 3.0);
  CHECK(std::abs(y_leading(1000.0, 1.0) - two_term) < 1e-4);
}

TEST_CASE("Re g scan: exact minimum on the positive ray and leg window") {
  const GFunction G = solve_z0(100.0, 0.0);
  const ReGBoundsReport rep = re_g_scan(G);

  // Exact interior minimum at angle 0: c1 - c2^2/(4 c3) = 1/350.
  CHECK(std::abs(rep.min_phi0 - 1.0 / 350.0) < 1e-10);
  CHECK(std::abs(rep.min_phi0 - (G.c1 - G.c2 * G.c2 / (4.0 * G.c3))) < 1e-14);

  CHECK(rep.leg_max < -0.00069);  // strictly negative along the 6pi/7 ray
  CHECK(rep.leg_max > -0.05);
  CHECK(rep.eps0 >= kPi / 28.0);
  CHECK(rep.eps0 < kPi / 7.0 + 1e-12);  // capped by the Re g = 0 cut ray
  CHECK(rep.c_lower > 0.0);
  CHECK(rep.c_lower <= rep.min_phi0);
  CHECK(rep.c_lower <= -rep.leg_max + 1e-18);
}

TEST_CASE("Re g scan: report invariants across x and T") {
  for (double x : {1e2, 1e3, 1e4}) {
    for (double T : {-2.0, 0.0, 2.0}) {
      for (double s : {1.0, -1.0}) {
        const GFunction G = solve_z0(s * x, s * T);
        const ReGBoundsReport rep = re_g_scan(G);
        CHECK(rep.min_phi0 > 0.0);
        CHECK(rep.leg_max < 0.0);
        CHECK(rep.eps0 > 0.0);
        // The pi/28 window holds at T = 0 (and for x > 0 at any scanned T);
        // for x < 0 a positive scaled temperature narrows it.
        if (T == 0.0 || s * x > 0.0) CHECK(rep.eps0 >= kPi / 28.0 - 1e-10);
        CHECK(rep.c_lower > 0.0);
        const double leg_angle = 6.0 * kPi / 7.0;
        for (const ReGSample& smp : rep.samples) {
          if (smp.angle == 0.0) CHECK(smp.value >= rep.c_lower - 1e-18);
          if (std::abs(smp.angle - leg_angle) <= rep.eps0)
            CHECK(smp.value <= -rep.c_lower + 1e-18);
        }
      }
    }
  }
}

TEST_CASE("Re g scan: exact per-ray extrema match a brute-force sweep") {
  const GFunction G = solve_z0(100.0, 0.0);
  const std::vector<double> radii = {1.0, 2.0, 4.0};
  const std::vector<double> angles = {0.0, 6.0 * kPi / 7.0};
  const ReGBoundsReport rep = re_g_scan(G, radii, angles);
  REQUIRE(rep.samples.size() == 4);

  for (double phi : angles) {
    const double A = G.c1 * std::cos(3.5 * phi);
    const double B = G.c2 * std::cos(2.5 * phi);
    const double C = G.c3 * std::cos(1.5 * phi);
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k <= 100000; ++k) {
      const double s = 0.25 + (1.0 - 0.25) * k / 100000.0;
      const double v = A + s * (B + s * C);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (const ReGSample& smp : rep.samples) {
      if (smp.angle != phi) continue;
      CHECK((std::abs(smp.value - lo) < 1e-8 || std::abs(smp.value - hi) < 1e-8));
      CHECK(smp.radius >= 1.0 - 1e-12);
      CHECK(smp.radius <= 4.0 + 1e-12);
    }
  }
}
