// Phase functions and the leading asymptotic law.
//
// For the scaled variable zeta the two phases are
//   theta(zeta; x, T)     = zeta^{7/2}/105 - T zeta^{3/2}/3 + x zeta^{1/2}
//   theta_hat(zeta; x, T) = zeta^{7/2}/105 - T|x|^{-2/3} zeta^{3/2}/3
//                           + sgn(x) zeta^{1/2}
// related by |x|^{7/6} theta_hat(zeta) = theta(|x|^{1/3} zeta).
//
// The g-function replaces theta_hat at infinity:
//   g(zeta) = c1 u^{7/2} + c2 u^{5/2} + c3 u^{3/2},  u = zeta - z0,
//   c1 = 1/105, c2 = z0/30, c3 = z0^2/36 - sgn(x) 2/(3 z0),
// where z0 = z0(x,T) is the real branch of
//   z^3 - 24 T |x|^{-2/3} z + 48 sgn(x) = 0
// with sign -sgn(x) (unique: the root product is -48 sgn(x), so exactly one
// root carries that sign even when all three are real). The choice of the
// c's makes g - theta_hat = O(zeta^{-1/2}) at infinity; the leading tail
// coefficient is b0 = z0^4/384 - sgn(x) z0/4.
//
// The conformal map for the local (disk) analysis is
//   f(zeta) = q(u)^{2/3} u,  q(u) = (3/2)(c3 + c2 u + c1 u^2),
// which satisfies (2/3) f^{3/2} = g and f'(z0) = ((3/2) c3)^{2/3}.
//
// Leading law: y(x,T) ~ (1/2) z0(x,T) |x|^{1/3}.
#pragma once

#include <complex>
#include <vector>

namespace pi2 {

using cplx = std::complex<double>;

// The (z0, coefficients) bundle defining g and f for given (x,T).
struct GFunction {
  double x = 0.0;
  double T = 0.0;
  double z0 = 0.0;
  double z0_hat = 0.0;  // -sgn(x) * 2 * 6^{1/3}
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

// theta with principal cut on (-inf, 0]; side as in branched_power_eval
// (+1 from above). side = 0 requires zeta off the cut.
cplx theta(cplx zeta, double x, double T, int side = 0);

// theta_hat; same cut conventions; throws std::domain_error for x = 0.
cplx theta_hat(cplx zeta, double x, double T, int side = 0);

// Solve the z0 cubic and fill all coefficients. Throws std::domain_error for
// x = 0 and std::runtime_error("z0 branch degenerate") if the selected root
// collides with another real root (unreachable for real T; defensive).
GFunction solve_z0(double x, double T);

// Two-term large-|x| expansion z0 ~ z0_hat - sgn(x)(2/3) 6^{2/3} T |x|^{-2/3}.
double z0_expansion(double x, double T);

// g with cut on (-inf, z0].
cplx g_eval(cplx zeta, const GFunction& G, int side = 0);

// Leading tail coefficient of g - theta_hat ~ b0 zeta^{-1/2}.
double g_tail_b0(const GFunction& G);

// g - theta_hat evaluated without catastrophic cancellation: for large
// |zeta| the difference is summed as the binomial tail sum_{k>=4} e_k
// zeta^{7/2-k} (the k <= 3 coefficients vanish identically by the choice of
// z0 and the c's); for moderate |zeta| plain subtraction is accurate.
cplx g_minus_theta_hat(cplx zeta, const GFunction& G);

// Conformal map f and its first two derivatives at z0.
// Throws std::runtime_error("f not conformal here") if q(u) ~ 0.
cplx conformal_f(cplx zeta, const GFunction& G);
double conformal_f_prime_z0(const GFunction& G);   // ((3/2) c3)^{2/3}
double conformal_f_second_z0(const GFunction& G);  // 2 c2 ((3/2) c3)^{-1/3}

// (1/2) z0(x,T) |x|^{1/3}.
double y_leading(double x, double T);

// Scan of the sign structure of Re g. For each angle phi the quantity
//   r^{-7/2} Re g(z0 + r e^{i phi}) = A + B/r + C/r^2,
//   A = c1 cos(7phi/2), B = c2 cos(5phi/2), C = c3 cos(3phi/2),
// is minimized/maximized exactly over r in [r_lo, r_hi] (quadratic in 1/r).
struct ReGSample {
  double angle, radius, value;  // value = r^{-7/2} Re g at the extremum
};
struct ReGBoundsReport {
  double min_phi0 = 0.0;  // exact min over r in [r_lo, r_hi] at angle 0
  double leg_max = 0.0;   // max of r^{-7/2} Re g over the angle-6pi/7 ray
  double eps0 = 0.0;      // validated angular half-width around 6pi/7
  // Largest c > 0 such that every sample at angle 0 is >= c and every
  // sample with |angle - 6pi/7| <= eps0 is <= -c, i.e.
  // c_lower = min(min_phi0, -window_max).
  double c_lower = 0.0;
  // Two records per angle: the exact minimizing and maximizing radius.
  std::vector<ReGSample> samples;
};

// angles/radii: scan grid; r-extrema are exact per angle, the angular
// window is measured on the given angle grid (report conservative).
ReGBoundsReport re_g_scan(const GFunction& G, const std::vector<double>& radii,
                          const std::vector<double>& angles);

// Convenience grid: angles 0..pi step pi/140, radii [0.25, 40].
ReGBoundsReport re_g_scan(const GFunction& G);

}  // namespace pi2
