#include "pi2/rh_contour.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace pi2 {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLegAngle = 6.0 * kPi / 7.0;
// Angular half-width of the validated negativity window around 6pi/7 (the
// sign scan of Re g certifies at least this much); the accepted sigma
// window is twice it on each side.
constexpr double kEpsilonZero = kPi / 28.0;
constexpr double kMinAbsX = 10.0;
// Maximum arc span on the disk boundary.
constexpr double kMaxArcSpan = 0.45;
// Legs: first panel length and geometric growth factor.
constexpr double kLegFirst = 0.4;
constexpr double kLegGrowth = 1.9;
// Panels are laid while 2|x|^{7/6}|Re g| at the panel start is below this;
// e^{-45} leaves ~1e-18 for the jump after the algebraic prefactors.
constexpr double kLegExponentCut = 45.0;

cplx f_prime(cplx zeta, const GFunction& G) {
  // f = u q(u)^{2/3}  =>  f'/f = 1/u + (2/3) q'/q, branch-free.
  const cplx u = zeta - G.z0;
  const cplx q = 1.5 * (G.c3 + u * (G.c2 + u * G.c1));
  const cplx qp = 1.5 * (G.c2 + 2.0 * u * G.c1);
  return conformal_f(zeta, G) * (1.0 / u + (2.0 / 3.0) * qp / q);
}

// 2|x|^{7/6} |Re g| at z0 + t e^{i phi}: the decay exponent of the leg jump.
double leg_exponent(const GFunction& G, double phi, double t) {
  const cplx zeta = G.z0 + t * std::polar(1.0, phi);
  return 2.0 * std::pow(std::abs(G.x), 7.0 / 6.0) *
         std::abs(std::real(g_eval(zeta, G)));
}

// Signed Re g at the leg start; the deformation needs Re g < 0 on the
// oblique legs and Re g > 0 on the real one.
double re_g_at(const GFunction& G, double phi, double t) {
  return std::real(g_eval(G.z0 + t * std::polar(1.0, phi), G));
}

// Break [t = delta, truncation] into geometrically growing pieces and
// return the breakpoints (>= 1 entry; legs can come out empty).
std::vector<double> leg_breakpoints(const GFunction& G, double phi,
                                    double delta) {
  std::vector<double> ts{delta};
  double len = kLegFirst;
  // Hard cap: the exponent grows like t^{7/2}, so this never triggers for
  // sane phases; it guards against a wrong-sign Re g slipping through.
  constexpr int kMaxPanels = 64;
  while (leg_exponent(G, phi, ts.back()) < kLegExponentCut) {
    ts.push_back(ts.back() + len);
    len *= kLegGrowth;
    if (static_cast<int>(ts.size()) > kMaxPanels)
      throw std::runtime_error("contour mismatch");
  }
  return ts;
}

void check_leg_signs(const GFunction& G, const std::vector<double>& ts,
                     double phi, double want_sign) {
  for (double t : ts)
    if (re_g_at(G, phi, t) * want_sign <= 0.0)
      throw std::runtime_error("contour mismatch");
}

}  // namespace

std::vector<cplx> trace_ray_preimage(const GFunction& G, double sigma,
                                     double delta) {
  const double fp0 = conformal_f_prime_z0(G);
  // Rounding floor of the f-residual: u = zeta - z0 cannot be represented
  // better than eps * |z0|, which f_prime scales into the image plane.
  const double floor = 4e-16 * fp0 * (std::abs(G.z0) + delta);

  // Newton to the preimage of target, seeded by the current zeta; returns
  // the refined point or throws once the residual stalls above tolerance.
  auto newton_to = [&](cplx zeta, cplx target) {
    const double tol = 1e-14 * std::abs(target) + floor;
    for (int it = 0; it < 12; ++it) {
      const cplx r = conformal_f(zeta, G) - target;
      if (std::abs(r) <= tol) return zeta;
      zeta -= r / f_prime(zeta, G);
    }
    if (std::abs(conformal_f(zeta, G) - target) > 1e3 * tol)
      throw std::runtime_error("no convergence");
    return zeta;
  };

  // Continuation in the ray radius from well inside (where the
  // linearization at z0 seeds Newton) out to roughly the disk boundary.
  const double rho0 = 1e-3 * fp0 * delta;
  double rho_exit = fp0 * delta;
  const int steps = 64;
  const double ratio = std::pow(rho_exit / rho0, 1.0 / (steps - 1));
  std::vector<cplx> pts;
  pts.reserve(steps);
  cplx zeta = G.z0 + std::polar(rho0, sigma) / fp0;
  double rho = rho0;
  for (int k = 0; k < steps; ++k) {
    zeta = newton_to(zeta, std::polar(rho, sigma));
    pts.push_back(zeta);
    rho *= ratio;
  }
  // Land exactly on |zeta - z0| = delta: Newton in the ray radius on
  // |preimage(rho) - z0| - delta (the radial speed 1/|f'| never vanishes
  // on the conformal disk).
  rho = rho_exit;
  bool landed = false;
  for (int it = 0; it < 12 && !landed; ++it) {
    const double miss = std::abs(zeta - G.z0) - delta;
    landed = std::abs(miss) <= 1e-13 * delta;
    if (landed) break;
    const cplx dz = std::polar(1.0, sigma) / f_prime(zeta, G);
    const double deriv =
        std::real(dz * std::conj(zeta - G.z0)) / std::abs(zeta - G.z0);
    rho -= miss / deriv;
    zeta = newton_to(zeta, std::polar(rho, sigma));
  }
  if (!landed) throw std::runtime_error("no convergence");
  pts.back() = zeta;
  return pts;
}

ContourSet build_contour(double x, double T, double delta) {
  return build_contour(solve_z0(x, T), delta);
}

ContourSet build_contour(const GFunction& G, double delta) {
  if (std::abs(G.x) < kMinAbsX)
    throw std::domain_error(
        "steepest-descent engine needs |x| >= 10; use the ODE engine below");
  if (!(delta > 0.0) || delta > 2.0)
    throw std::invalid_argument("disk radius must lie in (0, 2]");

  ContourSet c;
  c.x = G.x;
  c.T = G.T;
  c.delta = delta;
  c.G = G;

  // Opening angle from the prescribed exit point, then the window check.
  const cplx exit_up = c.G.z0 + delta * std::polar(1.0, kLegAngle);
  c.sigma = std::arg(conformal_f(exit_up, c.G));
  if (std::abs(c.sigma - kLegAngle) >= 2.0 * kEpsilonZero)
    throw std::runtime_error("contour mismatch");

  // Verified preimage trace: conformality forces the sigma-ray preimage
  // through the exit point; re-derive it independently.
  c.sigma_preimage = trace_ray_preimage(c.G, c.sigma, delta);
  if (std::abs(c.sigma_preimage.back() - exit_up) > 1e-10)
    throw std::runtime_error("contour mismatch");

  // Circle: clockwise from angle 0 through the junctions, with the pi
  // crossing split across the two branch representations; each gap
  // subdivided to spans <= kMaxArcSpan.
  const double gaps[4][2] = {{0.0, -kLegAngle},
                             {-kLegAngle, -kPi},
                             {kPi, kLegAngle},
                             {kLegAngle, 0.0}};
  const cplx center{c.G.z0, 0.0};
  for (const auto& gap : gaps) {
    const double lo = gap[0], hi = gap[1];
    const int n = static_cast<int>(std::ceil((lo - hi) / kMaxArcSpan));
    for (int k = 0; k < n; ++k)
      c.circle.push_back(make_arc_panel(center, delta,
                                        lo + (hi - lo) * k / n,
                                        lo + (hi - lo) * (k + 1) / n));
  }

  // Legs. Oblique ones need Re g < 0, the real one Re g > 0.
  const std::vector<double> ts_up = leg_breakpoints(c.G, kLegAngle, delta);
  const std::vector<double> ts_right = leg_breakpoints(c.G, 0.0, delta);
  check_leg_signs(c.G, ts_up, kLegAngle, -1.0);
  check_leg_signs(c.G, ts_right, 0.0, +1.0);
  c.truncation_radius = std::max(ts_up.back(), ts_right.back());

  const cplx dir_up = std::polar(1.0, kLegAngle);
  for (std::size_t k = ts_up.size() - 1; k >= 1; --k) {
    c.leg_upper.push_back(make_segment_panel(center + ts_up[k] * dir_up,
                                             center + ts_up[k - 1] * dir_up));
    c.leg_lower.push_back(
        make_segment_panel(center + ts_up[k] * std::conj(dir_up),
                           center + ts_up[k - 1] * std::conj(dir_up)));
  }
  for (std::size_t k = 0; k + 1 < ts_right.size(); ++k)
    c.leg_right.push_back(make_segment_panel(center + ts_right[k],
                                             center + ts_right[k + 1]));
  return c;
}

}  // namespace pi2
