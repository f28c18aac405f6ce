// Complex 2x2 matrix primitives.
//
// Everything downstream (Lax pair, Stokes products, parametrices, jump
// matrices, R-moments) lives in the 2x2 complex matrix algebra. Eigen's
// fixed-size Matrix2cd is the carrier; this header adds the few helpers that
// recur: the Pauli matrix sigma3, the rotation J = [[0,1],[-1,0]], the
// explicit inverse (cheap and exact-form for det-1 matrices), commutators,
// and an entrywise sup-norm used by all tolerance checks.
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace pi2 {

using cplx = std::complex<double>;
using Mat2C = Eigen::Matrix2cd;
using Vec2C = Eigen::Vector2cd;

inline Mat2C mat2(cplx a11, cplx a12, cplx a21, cplx a22) {
  Mat2C m;
  m << a11, a12, a21, a22;
  return m;
}

inline Mat2C mat2_identity() { return Mat2C::Identity(); }

// diag(e^{+s}, e^{-s}) — the exponent carrier e^{s*sigma3}.
inline Mat2C exp_sigma3(cplx s) {
  return mat2(std::exp(s), 0.0, 0.0, std::exp(-s));
}

inline Mat2C sigma3() { return mat2(1.0, 0.0, 0.0, -1.0); }

// J = [[0,1],[-1,0]]; J^2 = -I. Target of the Stokes-multiplier relation.
inline Mat2C rotation_j() { return mat2(0.0, 1.0, -1.0, 0.0); }

inline Mat2C mat2_mul(const Mat2C& a, const Mat2C& b) { return a * b; }

inline cplx mat2_det(const Mat2C& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

// Explicit 2x2 inverse. Throws nothing; caller guards det != 0 (all matrices
// inverted in this project are unimodular by construction).
inline Mat2C mat2_inv(const Mat2C& m) {
  const cplx d = mat2_det(m);
  return mat2(m(1, 1) / d, -m(0, 1) / d, -m(1, 0) / d, m(0, 0) / d);
}

inline Mat2C commutator(const Mat2C& a, const Mat2C& b) {
  return a * b - b * a;
}

// Entrywise sup-norm; the norm used by every jump/defect tolerance.
inline double mat2_norm(const Mat2C& m) {
  double r = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

inline bool mat2_finite(const Mat2C& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

}  // namespace pi2
