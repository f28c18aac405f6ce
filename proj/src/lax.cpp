#include "pi2/lax.hpp"

namespace pi2 {

namespace {

Mat2C lax_u_raw(cplx z, double y, double y_x, double y_xx, double y_xxx,
                double T, double x_term) {
  const cplx diag = 4.0 * y_x * z + (12.0 * y * y_x + y_xxx);
  const cplx u12 = 8.0 * z * z + 8.0 * y * z + (12.0 * y * y + 2.0 * y_xx -
                                                120.0 * T);
  const cplx u21 =
      8.0 * z * z * z - 8.0 * y * z * z -
      (4.0 * y * y + 2.0 * y_xx + 120.0 * T) * z +
      (16.0 * y * y * y - 2.0 * y_x * y_x + 4.0 * y * y_xx + 240.0 * x_term);
  return mat2(-diag / 240.0, u12 / 240.0, u21 / 240.0, diag / 240.0);
}

}  // namespace

double pi2_residual(const Jet4& j) {
  return j.x - j.T * j.y + j.y * j.y * j.y / 6.0 +
         (j.y_x * j.y_x + 2.0 * j.y * j.y_xx) / 24.0 + j.y_xxxx / 240.0;
}

double pi2_fourth_derivative(double y, double y_x, double y_xx, double x,
                             double T) {
  return 240.0 * (T * y - x) - 40.0 * y * y * y - 10.0 * y_x * y_x -
         20.0 * y * y_xx;
}

Mat2C lax_U(cplx zeta, const Jet4& j) {
  return lax_u_raw(zeta, j.y, j.y_x, j.y_xx, j.y_xxx, j.T, j.x);
}

Mat2C lax_W(cplx zeta, double y) {
  return mat2(0.0, 1.0, zeta - 2.0 * y, 0.0);
}

Mat2C compatibility_defect(cplx zeta, const Jet4& j) {
  const Mat2C U = lax_U(zeta, j);
  const Mat2C W = lax_W(zeta, j.y);

  // d/dx through the jet (y -> y_x, ..., y_xxx -> y_xxxx, x -> 1); the
  // product terms make this different from re-calling lax_u_raw on the
  // shifted jet, so U_x is assembled entrywise.
  const double y = j.y, y1 = j.y_x, y2 = j.y_xx, y3 = j.y_xxx, y4 = j.y_xxxx;
  const cplx z = zeta;
  const cplx diag_x = 4.0 * y2 * z + (12.0 * (y1 * y1 + y * y2) + y4);
  const cplx u12_x = 8.0 * y1 * z + (24.0 * y * y1 + 2.0 * y3);
  const cplx u21_x = -8.0 * y1 * z * z - (8.0 * y * y1 + 2.0 * y3) * z +
                     (48.0 * y * y * y1 + 4.0 * y * y3 + 240.0);
  const Mat2C Ux = mat2(-diag_x / 240.0, u12_x / 240.0, u21_x / 240.0,
                        diag_x / 240.0);

  const Mat2C Wz = mat2(0.0, 0.0, 1.0, 0.0);
  return Ux - Wz + U * W - W * U;
}

Mat2C stokes_relation_check(const std::array<cplx, 7>& s) {
  Mat2C prod = mat2_identity();
  for (int k = 0; k < 7; ++k) {
    const bool lower = (k % 2 == 0);
    const Mat2C factor = lower ? mat2(1.0, 0.0, s[k], 1.0)
                               : mat2(1.0, s[k], 0.0, 1.0);
    prod = prod * factor;
  }
  return prod;
}

}  // namespace pi2
