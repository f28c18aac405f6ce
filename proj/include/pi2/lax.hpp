// The fourth-order equation, its Lax pair, and the compatibility oracle.
//
// Residual of the equation at a point, for a 4-jet of y:
//   F = x - T y + y^3/6 + (y_x^2 + 2 y y_xx)/24 + y_xxxx/240,
// so solutions satisfy
//   y_xxxx = 240 (T y - x) - 40 y^3 - 10 y_x^2 - 20 y y_xx.
//
// The associated linear systems Psi_zeta = U Psi, Psi_x = W Psi use
//   U = (1/240) [ -4 y_x z - (12 y y_x + y_xxx),
//                     8 z^2 + 8 y z + (12 y^2 + 2 y_xx - 120 T) ;
//                 U21,  4 y_x z + (12 y y_x + y_xxx) ],
//   U21 = 8 z^3 - 8 y z^2 - (4 y^2 + 2 y_xx + 120 T) z
//         + (16 y^3 - 2 y_x^2 + 4 y y_xx + 240 x),
//   W = [[0, 1], [z - 2y, 0]],
// and their compatibility defect
//   D = U_x - W_z + U W - W U
// collapses to the exact identity D = -F sigma3, independent of zeta
// (U_x is taken through the jet: y -> y_x, ..., y_xxx -> y_xxxx, x -> 1).
// That identity is the master one-line correctness test for any computed
// solution jet.
//
// The solvability relation for the seven Stokes multipliers, in the product
// order (s4, s5, s6, s0, s1, s2, s3) with alternating lower/upper factors
// starting lower, is
//   L(s4) R(s5) L(s6) R(s0) L(s1) R(s2) L(s3) = [[0,1],[-1,0]],
// where L(s) = [[1,0],[s,1]] and R(s) = [[1,s],[0,1]]. The solution targeted
// throughout this project has s1 = s2 = s5 = s6 = 0, s0 = 1, s3 = s4 = -1.
#pragma once

#include <array>

#include "pi2/mat2.hpp"

namespace pi2 {

// y and its first four x-derivatives at one point, plus the parameters.
struct Jet4 {
  double y = 0.0;
  double y_x = 0.0;
  double y_xx = 0.0;
  double y_xxx = 0.0;
  double y_xxxx = 0.0;
  double x = 0.0;
  double T = 0.0;
};

// F = x - T y + y^3/6 + (y_x^2 + 2 y y_xx)/24 + y_xxxx/240.
double pi2_residual(const Jet4& j);

// y_xxxx solved from F = 0; the right-hand side used by the ODE engine.
double pi2_fourth_derivative(double y, double y_x, double y_xx, double x,
                             double T);

Mat2C lax_U(cplx zeta, const Jet4& j);
Mat2C lax_W(cplx zeta, double y);

// D = U_x - W_zeta + U W - W U; equals -pi2_residual(j) * sigma3.
Mat2C compatibility_defect(cplx zeta, const Jet4& j);

// Seven-factor product in the order (s4, s5, s6, s0, s1, s2, s3); the
// multipliers satisfy the solvability relation iff this is [[0,1],[-1,0]].
Mat2C stokes_relation_check(const std::array<cplx, 7>& s);

}  // namespace pi2
