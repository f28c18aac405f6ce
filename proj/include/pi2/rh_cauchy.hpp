// Panel quadrature for Cauchy transforms on piecewise-smooth contours.
//
// A Panel is a straight segment or a circular arc carrying 12 Gauss-Legendre
// nodes in a parameter t in [-1, 1]. For a density psi known at the nodes,
// panel_cauchy evaluates (1/2pi i) int psi(s)/(s - zeta) ds in one of three
// regimes, chosen by the Bernstein radius of the parameter-plane preimage
// tau of zeta:
//
//   far   (rho(tau) > 3, or no usable preimage): plain Gauss-Legendre;
//   close (rho(tau) <= 3): singularity subtraction + exact Legendre moments
//         q_m(tau) = int P_m(t)/(t - tau) dt, so accuracy does not collapse
//         as zeta approaches the panel;
//   boundary (zeta = a node of this panel): the sided limit, q_0 carrying
//         principal value +/- i pi. Side +1 is the side to the left of the
//         direction of increasing t (conformal parametrizations preserve
//         orientation).
//
// The moments q_m are computed by the three-term recurrence upward when tau
// is on or near the cut [-1, 1] (all solutions O(1) there) and by downward
// recurrence with renormalization against the closed-form q_0 otherwise,
// where the upward direction would amplify rounding through the growing
// Legendre solution.
//
// Everything is linear in the node values; the *_weights variants return
// the 12 influence coefficients so a Nystrom discretization can assemble
// the boundary operator as a dense matrix.
//
// Limitation: an off-curve target within distance d of a quadrature node
// (d much smaller than the panel scale) loses ~1e-16/d^2 absolute accuracy
// to cancellation in the subtraction term. Evaluate on the curve with
// panel_cauchy_boundary instead of stepping off it; distinct panels on a
// sanely built contour never place a target that close to a foreign node.
#pragma once

#include <array>
#include <complex>

#include "pi2/mat2.hpp"

namespace pi2 {

inline constexpr int kPanelNodes = 12;

using PanelValues = std::array<cplx, kPanelNodes>;
using PanelWeights = std::array<cplx, kPanelNodes>;
using PanelMatValues = std::array<Mat2C, kPanelNodes>;

struct Panel {
  enum class Kind { kSegment, kArc };
  Kind kind = Kind::kSegment;
  // Segment data: s(t) = (a + b)/2 + t (b - a)/2.
  cplx a{0.0, 0.0};
  cplx b{1.0, 0.0};
  // Arc data: s(t) = center + radius e^{i theta(t)}, theta affine from ang0
  // to ang1 (ang1 < ang0 parametrizes the arc clockwise).
  cplx center{0.0, 0.0};
  double radius = 0.0;
  double ang0 = 0.0;
  double ang1 = 0.0;
  // Cached nodes s(t_j) and parameter derivatives s'(t_j).
  std::array<cplx, kPanelNodes> node{};
  std::array<cplx, kPanelNodes> dnode{};
};

Panel make_segment_panel(cplx a, cplx b);
Panel make_arc_panel(cplx center, double radius, double ang0, double ang1);

// The 12-point Gauss-Legendre rule on [-1, 1].
const std::array<double, kPanelNodes>& gauss_nodes();
const std::array<double, kPanelNodes>& gauss_weights();

// Parameter-plane preimage of zeta (complex t with s(t) = zeta). For arcs
// the angular branch nearest the panel's own window is taken.
cplx panel_pullback(const Panel& p, cplx zeta);

// rho(tau) = |tau + sqrt(tau^2 - 1)| >= 1: the Bernstein ellipse parameter
// deciding far versus close evaluation.
double bernstein_radius(cplx tau);

// Influence weights: dot(weights, psi) = (1/2pi i) int psi/(s - zeta) ds.
// Throws std::domain_error if zeta lies on the panel (use the boundary
// variant with a side).
PanelWeights panel_cauchy_weights(const Panel& p, cplx zeta);
// Sided limit at one of the panel's own nodes.
PanelWeights panel_cauchy_weights_boundary(const Panel& p, int node,
                                           int side);

cplx panel_cauchy(const Panel& p, const PanelValues& psi, cplx zeta);
cplx panel_cauchy_boundary(const Panel& p, const PanelValues& psi, int node,
                           int side);
Mat2C panel_cauchy(const Panel& p, const PanelMatValues& psi, cplx zeta);
Mat2C panel_cauchy_boundary(const Panel& p, const PanelMatValues& psi,
                            int node, int side);

// Plain moment (1/2pi i) int psi ds (no kernel); the R-moment integrand.
cplx panel_moment(const Panel& p, const PanelValues& psi);
Mat2C panel_moment(const Panel& p, const PanelMatValues& psi);

}  // namespace pi2
