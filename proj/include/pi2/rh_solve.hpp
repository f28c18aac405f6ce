// Residual Riemann-Hilbert solve: from near-identity jump data on the
// assembled contour to the first moment R1 and the solution value y.
//
// After trading the phase for g and installing a local model near z0, the
// remaining unknown R(zeta) is analytic off the contour built by
// build_contour (clockwise matching circle plus up to three exponentially
// truncated legs), tends to I at infinity, and jumps by R+ = R- v_R with
// + the side to the left of the direction of travel:
//
//   circle  v_R = E A(w) E^{-1},  w = |x|^{7/9} f(zeta),
//           A(w) = M(w) N^{-1} w^{sigma3/4} = I + B1/w + B2/w^2 + ...
//           (the model's deviation from its own large-w behavior; integer
//           powers of w, so A is single-valued near infinity), and
//           E = diag(e, 1/e), e = |x|^{1/9} q(u)^{1/6}, u = zeta - z0,
//           is the analytic prefactor that matches the local model to the
//           outer parametrix P_out = |x|^{-sigma3/12} u^{-sigma3/4} N;
//
//   legs    v_R = I + exp(+2|x|^{7/6} g) P_out E21 P_out^{-1} on the two
//           oblique legs and I + exp(-2|x|^{7/6} g) P_out E12 P_out^{-1}
//           on the real one: the analytically continued one-triangle ray
//           jumps conjugated by the outer parametrix, size
//           exp(-2|x|^{7/6}|Re g|).
//
// P_out absorbs the orientation jump on the cut (-inf, z0] exactly
// (P_out+ = P_out- [[0,1],[-1,0]]), which is why no leg runs left.
//
// Pulled back to zeta, the first two terms of the circle deviation are
// meromorphic at z0:
//
//   v_R - I = Delta1/|x| + Delta2/|x|^{4/3} + O(|x|^{-7/3}),
//   Delta1 = t1 q(u)^{-1} u^{-1} E21,   Delta2 = s1 q(u)^{-1} u^{-2} E12,
//
// with (s1, t1) the first parametrix-series pair. With the circle's
// clockwise orientation the first moment of R = I + R1/zeta + ... obeys
//
//   R1 = Res_{z0} Delta1 |x|^{-1} + Res_{z0} Delta2 |x|^{-4/3}
//        + O(|x|^{-7/3}),
//
// det R = 1 forces tr R1 = 0, and the recovered solution value is
//
//   y = (1/2) z0 |x|^{1/3} + 2 |x|^{1/3} (R1)_{11} - |x|^{2/3} (R1)_{12}^2.
//
// solve_R discretizes the boundary relation R- = I + C^-[R-(v_R - I)] at
// the panel nodes (sided quadrature from rh_cauchy; C^- is the minus-side
// limit, i.e. side -1 of each panel's own parametrization) and solves it
// either by Neumann sweeps (neumann_order of them; the jumps are within
// O(|x|^{-1}) of I, so each sweep gains that factor) or, with cfg.dense,
// by one LU solve of the 2N x 2N Nystrom system, which is row-decoupled
// into the same N x N scalar-weight block for both rows of R-. est_error
// is the norm of the moment of one further sweep - the first neglected
// correction - floored at 1e-12 on the dense path, where the iteration
// residual sits below the quadrature resolution.
#pragma once

#include <string>
#include <utility>

#include "pi2/rh_contour.hpp"
#include "pi2/rh_model.hpp"

namespace pi2 {

// Outer parametrix |x|^{-sigma3/12} (zeta - z0)^{-sigma3/4} N, cut along
// (-inf, z0]; side as in branched_power_eval (+1 from above). Throws
// std::domain_error("on branch cut") on the cut without a side.
Mat2C parametrix_outer(cplx zeta, const GFunction& G, int side = 0);

// Analytic local prefactor E = diag(e, 1/e), e = |x|^{1/9} q(u)^{1/6};
// throws std::runtime_error("f not conformal here") if Re q <= 0 (the
// sixth root would lose analyticity on the disk).
Mat2C local_prefactor(cplx zeta, const GFunction& G);

// Local parametrix P = E M(w) on the disk |zeta - z0| <= delta. Points on
// the four ray preimages need the caller to step off (the model refuses
// on-ray w without a side); used off those preimages.
Mat2C parametrix_local(cplx zeta, const ContourSet& C);

// Jump matrix v_R at a point s of the contour (tolerance ~1e-10 for the
// membership test). Throws std::domain_error("point is not on the
// contour") otherwise. Leg points beyond the truncation radius are valid
// (the jump is identity there to ~1e-18).
Mat2C jump_vR(cplx s, const ContourSet& C);

// Residues at z0 of Delta1 (E21 entry t1/q(0)) and Delta2 (E12 entry
// -(3/2) s1 c2 / q(0)^2).
std::pair<Mat2C, Mat2C> delta_residues(const GFunction& G);

struct SolveConfig {
  int neumann_order = 2;  // sweeps of the Neumann iteration, in [1, 12]
  bool dense = false;     // LU-solve the Nystrom system instead
  double delta = 1.0;     // matching-circle radius, forwarded to the builder
};

struct RMoments {
  Mat2C R1 = Mat2C::Zero();
  double x = 0.0;
  double T = 0.0;
  int neumann_order = 0;         // 0 on the dense path
  double est_error = 0.0;        // norm of the first neglected correction
  double max_jump_deviation = 0.0;  // max over nodes of ||v_R - I||
  int panel_count = 0;
};

// Build the contour for (x, T), evaluate the jumps, solve for R-, and
// return the first moment R1 = -(1/2pi i) int R-(s)(v_R(s) - I) ds.
// Throws what build_contour throws, std::invalid_argument for a bad
// neumann_order, and std::runtime_error("dense solve ill-conditioned")
// if the Nystrom matrix has condition number above 1e12.
RMoments solve_R(double x, double T, const SolveConfig& cfg = SolveConfig{});

// y from the moment via the formula above. Throws std::invalid_argument
// if the bundle does not belong to the moments and
// std::runtime_error("nonreal extraction") if |Im y| > 1e-8 (1 + |Re y|);
// returns Re y.
double extract_y(const RMoments& m, const GFunction& G);

// One-line JSON record of a solve: x, T, sigma, delta, panel_count,
// max_jump_deviation, R1 (entries as [re, im]), y, est_error. Stable
// key order and shortest round-trip number formatting, so equal inputs
// give byte-identical records.
std::string rh_report_json(const ContourSet& C, const RMoments& m, double y);

}  // namespace pi2
