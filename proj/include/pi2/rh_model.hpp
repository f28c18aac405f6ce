// The Airy-built model problem on the four-ray star {0, ±sigma, pi}.
//
// airy_model_M evaluates the unique 2x2 matrix function M(w) that is
// analytic off the four rays arg w in {0, +sigma, pi, -sigma} (rays oriented
// left-to-right, + side to the left of travel), has unit determinant, jumps
//
//   arg w = 0:       M+ = M- [[1, e^{-(4/3)w^{3/2}}], [0, 1]]
//   arg w = ±sigma:  M+ = M- [[1, 0], [e^{+(4/3)w^{3/2}}, 1]]
//   arg w = pi:      M+ = M- [[0, 1], [-1, 0]]
//
// and large-w behavior M = (I + B1/w + B2/w^2 + ...) w^{-sigma3/4} N with
// N = (1/sqrt 2)[[1,1],[-1,1]] e^{-i pi sigma3/4}, B_{3k-2} = t_{2k-1} E21,
// B_{3k-1} = s_{2k-1} E12, B_{3k} = diag(s_2k, t_2k), (s_k, t_k) from
// airy_coeffs. It is assembled sector by sector from columns of Airy
// functions Ai(om^k w), om = e^{2 pi i/3}, times e^{(2/3)w^{3/2} sigma3};
// the construction keeps every exponent analytically cancelled, so the
// evaluation never over- or underflows at any |w|.
//
// Two evaluation paths: the Airy columns (exact up to ~1e-13), and the
// truncated asymptotic series above |w| = series_threshold, where the first
// dropped coefficient |B7|/|w|^7 (reported as ModelDiag::truncation_error)
// is below 1e-10. The downstream solver hits both paths: |w| on the
// matching circle grows like |x|^{7/9}.
#pragma once

#include <complex>

#include "pi2/mat2.hpp"

namespace pi2 {

struct ModelParams {
  // |w| at/above which the truncated series replaces the Airy columns.
  double series_threshold = 30.0;
  // Series truncation order: keep B_1..B_{series_terms}.
  int series_terms = 6;
  // 0: choose by |w|; +1: force the series; -1: force the Airy columns.
  // Forcing is for seam tests; the Airy path stays finite at any |w|.
  int force_path = 0;
};

struct ModelDiag {
  bool used_series = false;
  // Entrywise bound for the first dropped series term, 0 on the Airy path.
  double truncation_error = 0.0;
};

// N = (1/sqrt 2)[[1,1],[-1,1]] e^{-i pi sigma3/4}: the unimodular constant
// factor shared by the model's large-w behavior and the outer parametrix.
Mat2C model_N();

// Evaluate M(w) for opening angle sigma in (pi/3, pi).
//
// side: required (+1 or -1) when w lies on one of the four rays (within
// ~1e-13 rad); selects the boundary value from the + or - side of the
// oriented ray. Off the rays side is ignored. Throws std::domain_error for
// on-ray w without a side and for w = 0; std::invalid_argument for sigma
// outside (pi/3, pi).
Mat2C airy_model_M(std::complex<double> w, double sigma, int side = 0);
Mat2C airy_model_M(std::complex<double> w, double sigma, int side,
                   const ModelParams& prm, ModelDiag* diag = nullptr);

}  // namespace pi2
