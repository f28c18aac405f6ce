#include "pi2/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pi2/branched_power.hpp"
#include "pi2/cubic.hpp"

namespace pi2 {

namespace {

constexpr double kPi = std::numbers::pi;
// 6^{1/3} and (2/3) 6^{2/3}
constexpr double kCbrt6 = 1.8171205928321396589;
constexpr double kTwoThirdsSix23 = 2.2012848325964177892;

double sgn_nonzero(double x) { return x < 0.0 ? -1.0 : 1.0; }

// zeta^p with the cut along (-inf, 0].
cplx zeta_pow(cplx zeta, double p, int side) {
  BranchedPower bp;
  bp.exponent = p;
  return branched_power_eval(bp, zeta, side);
}

// (zeta - z0)^p with the cut along (-inf, z0].
cplx offset_pow(cplx zeta, double z0, double p, int side) {
  BranchedPower bp;
  bp.base_point = cplx(z0, 0.0);
  bp.exponent = p;
  return branched_power_eval(bp, zeta, side);
}

// Extrema of A + B s + C s^2 (s = 1/r) over r in [r_lo, r_hi].
struct RayExtrema {
  double r_min = 0.0, v_min = 0.0;  // minimizing radius / value
  double r_max = 0.0, v_max = 0.0;  // maximizing radius / value
};

RayExtrema ray_extrema(const GFunction& G, double phi, double r_lo,
                       double r_hi) {
  const double A = G.c1 * std::cos(3.5 * phi);
  const double B = G.c2 * std::cos(2.5 * phi);
  const double C = G.c3 * std::cos(1.5 * phi);
  const auto value = [&](double s) { return A + s * (B + s * C); };

  const double s_lo = 1.0 / r_hi;
  const double s_hi = 1.0 / r_lo;
  RayExtrema ex;
  ex.r_min = ex.r_max = r_hi;
  ex.v_min = ex.v_max = value(s_lo);
  const auto consider = [&](double s) {
    const double v = value(s);
    if (v < ex.v_min) {
      ex.v_min = v;
      ex.r_min = 1.0 / s;
    }
    if (v > ex.v_max) {
      ex.v_max = v;
      ex.r_max = 1.0 / s;
    }
  };
  consider(s_hi);
  if (C != 0.0) {
    const double s_vertex = -B / (2.0 * C);
    if (s_vertex > s_lo && s_vertex < s_hi) consider(s_vertex);
  }
  return ex;
}

}  // namespace

cplx theta(cplx zeta, double x, double T, int side) {
  return zeta_pow(zeta, 3.5, side) / 105.0 -
         (T / 3.0) * zeta_pow(zeta, 1.5, side) + x * zeta_pow(zeta, 0.5, side);
}

cplx theta_hat(cplx zeta, double x, double T, int side) {
  if (x == 0.0) throw std::domain_error("theta_hat requires x != 0");
  const double t_hat = T * std::pow(std::abs(x), -2.0 / 3.0);
  return zeta_pow(zeta, 3.5, side) / 105.0 -
         (t_hat / 3.0) * zeta_pow(zeta, 1.5, side) +
         sgn_nonzero(x) * zeta_pow(zeta, 0.5, side);
}

GFunction solve_z0(double x, double T) {
  if (x == 0.0) throw std::domain_error("z0 requires x != 0");
  const double sgn = sgn_nonzero(x);
  const double t_hat = T * std::pow(std::abs(x), -2.0 / 3.0);
  const std::vector<double> roots =
      cubic_real_roots(1.0, 0.0, -24.0 * t_hat, 48.0 * sgn);

  // The root product is -48 sgn(x) and the root sum is 0, so exactly one
  // real root has sign -sgn(x); anything else means the solve went wrong.
  double z0 = 0.0;
  int hits = 0;
  for (double r : roots) {
    if (r * sgn < 0.0) {
      z0 = r;
      ++hits;
    }
  }
  if (hits != 1) throw std::runtime_error("z0 branch degenerate");
  for (double r : roots) {
    if (r != z0 && std::abs(r - z0) <= 1e-8 * std::max(1.0, std::abs(z0)))
      throw std::runtime_error("z0 branch degenerate");
  }

  GFunction G;
  G.x = x;
  G.T = T;
  G.z0 = z0;
  G.z0_hat = -sgn * 2.0 * kCbrt6;
  G.c1 = 1.0 / 105.0;
  G.c2 = z0 / 30.0;
  G.c3 = z0 * z0 / 36.0 - sgn * 2.0 / (3.0 * z0);
  return G;
}

double z0_expansion(double x, double T) {
  if (x == 0.0) throw std::domain_error("z0 requires x != 0");
  const double sgn = sgn_nonzero(x);
  return -sgn * 2.0 * kCbrt6 -
         sgn * kTwoThirdsSix23 * T * std::pow(std::abs(x), -2.0 / 3.0);
}

cplx g_eval(cplx zeta, const GFunction& G, int side) {
  return G.c1 * offset_pow(zeta, G.z0, 3.5, side) +
         G.c2 * offset_pow(zeta, G.z0, 2.5, side) +
         G.c3 * offset_pow(zeta, G.z0, 1.5, side);
}

double g_tail_b0(const GFunction& G) {
  const double z0 = G.z0;
  return z0 * z0 * z0 * z0 / 384.0 - sgn_nonzero(G.x) * z0 / 4.0;
}

cplx g_minus_theta_hat(cplx zeta, const GFunction& G) {
  const double threshold = 8.0 * std::max(1.0, std::abs(G.z0));
  if (std::abs(zeta) < threshold)
    return g_eval(zeta, G) - theta_hat(zeta, G.x, G.T);

  // Binomial tails of c_j (zeta - z0)^{alpha_j} about infinity. Writing
  // B(alpha, j) = binom(alpha, j) (-z0)^j, the coefficient of
  // zeta^{7/2 - k} in g is
  //   e_k = c1 B(7/2, k) + c2 B(5/2, k-1) + c3 B(3/2, k-2),
  // and for k <= 3 these cancel theta_hat exactly (that is how z0 and the
  // c's were chosen), so the sum starts at k = 4.
  constexpr int kMax = 60;
  double b7[kMax + 1], b5[kMax + 1], b3[kMax + 1];
  b7[0] = b5[0] = b3[0] = 1.0;
  for (int j = 1; j <= kMax; ++j) {
    const double step = -G.z0 / j;
    b7[j] = b7[j - 1] * (3.5 - j + 1.0) * step;
    b5[j] = b5[j - 1] * (2.5 - j + 1.0) * step;
    b3[j] = b3[j - 1] * (1.5 - j + 1.0) * step;
  }
  const cplx zinv = 1.0 / zeta;
  cplx pw = zinv * zinv * zinv * zinv;
  cplx sum = 0.0;
  for (int k = 4; k <= kMax; ++k) {
    const double ek = G.c1 * b7[k] + G.c2 * b5[k - 1] + G.c3 * b3[k - 2];
    const cplx term = ek * pw;
    sum += term;
    if (k > 8 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    pw *= zinv;
  }
  return zeta_pow(zeta, 3.5, 0) * sum;
}

cplx conformal_f(cplx zeta, const GFunction& G) {
  const cplx u = zeta - G.z0;
  const cplx q = 1.5 * (G.c3 + u * (G.c2 + u * G.c1));
  if (std::abs(q) <= 1e-8 * std::max(1.0, 1.5 * std::abs(G.c3)))
    throw std::runtime_error("f not conformal here");
  // Principal q^{2/3}; q stays near the positive real axis on the disk
  // where the map is used, far from the log cut.
  return std::exp((2.0 / 3.0) * std::log(q)) * u;
}

double conformal_f_prime_z0(const GFunction& G) {
  const double q0 = 1.5 * G.c3;
  return std::cbrt(q0 * q0);
}

double conformal_f_second_z0(const GFunction& G) {
  return 2.0 * G.c2 / std::cbrt(1.5 * G.c3);
}

double y_leading(double x, double T) {
  return 0.5 * solve_z0(x, T).z0 * std::cbrt(std::abs(x));
}

ReGBoundsReport re_g_scan(const GFunction& G, const std::vector<double>& radii,
                          const std::vector<double>& angles) {
  if (radii.empty() || angles.empty())
    throw std::invalid_argument("re_g_scan needs a nonempty grid");
  const double r_lo = *std::min_element(radii.begin(), radii.end());
  const double r_hi = *std::max_element(radii.begin(), radii.end());
  if (!(r_lo > 0.0)) throw std::invalid_argument("radii must be positive");

  const double leg_angle = 6.0 * kPi / 7.0;
  ReGBoundsReport rep;
  rep.min_phi0 = ray_extrema(G, 0.0, r_lo, r_hi).v_min;
  rep.leg_max = ray_extrema(G, leg_angle, r_lo, r_hi).v_max;

  std::vector<double> maxima(angles.size());
  rep.samples.reserve(2 * angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const RayExtrema ex = ray_extrema(G, angles[i], r_lo, r_hi);
    maxima[i] = ex.v_max;
    rep.samples.push_back({angles[i], ex.r_min, ex.v_min});
    rep.samples.push_back({angles[i], ex.r_max, ex.v_max});
  }

  // Grow the angular window around 6pi/7 over the given grid while every
  // ray in it stays strictly negative. The floor keeps rays where Re g
  // vanishes identically (the cut direction pi) from passing on rounding
  // noise alone.
  constexpr double kNegFloor = 1e-14;
  std::vector<std::size_t> order(angles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> dist(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i)
    dist[i] = std::abs(angles[i] - leg_angle);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

  double eps = -1.0;
  double window_max = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    const double d = dist[order[i]];
    std::size_t j = i;
    double batch_max = -std::numeric_limits<double>::infinity();
    while (j < order.size() && dist[order[j]] <= d + 1e-15)
      batch_max = std::max(batch_max, maxima[order[j++]]);
    if (!(batch_max < -kNegFloor)) break;
    eps = d;
    window_max = std::max(window_max, batch_max);
    i = j;
  }
  rep.eps0 = std::max(eps, 0.0);
  rep.c_lower = eps >= 0.0 ? std::min(rep.min_phi0, -window_max) : 0.0;
  return rep;
}

ReGBoundsReport re_g_scan(const GFunction& G) {
  std::vector<double> angles;
  angles.reserve(141);
  for (int i = 0; i <= 140; ++i) angles.push_back(i * (kPi / 140.0));
  std::vector<double> radii;
  const int nr = 25;
  radii.reserve(nr);
  for (int i = 0; i < nr; ++i)
    radii.push_back(0.25 * std::pow(160.0, double(i) / (nr - 1)));
  return re_g_scan(G, radii, angles);
}

}  // namespace pi2
