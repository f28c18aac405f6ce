#include "pi2/rh_cauchy.hpp"

#include <cmath>
#include <stdexcept>

namespace pi2 {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Bernstein radius separating plain quadrature from close evaluation. The
// 12-point rule's kernel error decays like rho^{-24}; above 3 it is below
// the 1e-11 budget, below 3 the moment path takes over.
constexpr double kCloseRho = 3.0;
// Above this radius the upward q-recurrence would amplify rounding through
// the growing Legendre solution (error ~ eps * rho^{11}); below it the
// downward direction cannot separate the two recurrence solutions in a
// reasonable number of steps. At the switch both are good to ~1e-12.
constexpr double kUpwardRho = 2.0;

const cplx kInv2PiI{0.0, -1.0 / (2.0 * kPi)};

struct GaussRule {
  std::array<double, kPanelNodes> t{};
  std::array<double, kPanelNodes> w{};
  // legendre[m][j] = P_m(t_j), m = 0..kPanelNodes-1.
  std::array<std::array<double, kPanelNodes>, kPanelNodes> legendre{};
};

GaussRule build_rule() {
  GaussRule g;
  const int n = kPanelNodes;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    g.t[n - 1 - i] = x;  // initial guesses run right to left
    g.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  for (int j = 0; j < n; ++j) {
    g.legendre[0][j] = 1.0;
    g.legendre[1][j] = g.t[j];
    for (int m = 2; m < n; ++m)
      g.legendre[m][j] = ((2.0 * m - 1.0) * g.t[j] * g.legendre[m - 1][j] -
                          (m - 1.0) * g.legendre[m - 2][j]) /
                         m;
  }
  return g;
}

const GaussRule& rule() {
  static const GaussRule g = build_rule();
  return g;
}

cplx panel_point(const Panel& p, double t) {
  if (p.kind == Panel::Kind::kSegment)
    return 0.5 * (p.a + p.b) + 0.5 * t * (p.b - p.a);
  const double th = 0.5 * (p.ang0 + p.ang1) + 0.5 * t * (p.ang1 - p.ang0);
  return p.center + p.radius * cplx(std::cos(th), std::sin(th));
}

cplx panel_derivative(const Panel& p, double t) {
  if (p.kind == Panel::Kind::kSegment) return 0.5 * (p.b - p.a);
  const double h = 0.5 * (p.ang1 - p.ang0);
  const double th = 0.5 * (p.ang0 + p.ang1) + t * h;
  return cplx(0.0, h) * p.radius * cplx(std::cos(th), std::sin(th));
}

// q_m(tau) = int_{-1}^{1} P_m(t)/(t - tau) dt for m < kPanelNodes. For tau
// exactly on [-1, 1], side (+1: limit from Im t > 0) resolves the principal
// value; elsewhere side is ignored.
std::array<cplx, kPanelNodes> legendre_cauchy_moments(cplx tau, int side) {
  std::array<cplx, kPanelNodes> q{};
  const bool on_cut = tau.imag() == 0.0 && std::abs(tau.real()) <= 1.0;
  cplx q0;
  if (on_cut) {
    const double tr = tau.real();
    q0 = cplx(std::log((1.0 - tr) / (1.0 + tr)), side * kPi);
  } else {
    q0 = std::log((1.0 - tau) / (-1.0 - tau));
  }
  const double rho = on_cut ? 1.0 : bernstein_radius(tau);
  if (on_cut || rho <= kUpwardRho) {
    // Upward: all solutions O(1) near the cut.
    q[0] = q0;
    q[1] = 2.0 + tau * q0;
    for (int k = 1; k + 1 < kPanelNodes; ++k)
      q[k + 1] = ((2.0 * k + 1.0) * tau * q[k] - double(k) * q[k - 1]) /
                 (k + 1.0);
    return q;
  }
  // Downward with renormalization: the decaying solution (ours) dominates
  // in this direction. The trial start decays relative to the answer by
  // rho^{-2 * (steps above index 11)}; pick enough steps for ~1e-19.
  const int start =
      kPanelNodes - 1 + static_cast<int>(std::ceil(9.5 / std::log10(rho)));
  constexpr int kMaxStart = 64;
  const int kStart = std::min(start, kMaxStart);
  std::array<cplx, kMaxStart + 2> trial{};
  trial[kStart + 1] = 0.0;
  trial[kStart] = 1.0;
  for (int k = kStart; k >= 1; --k)
    trial[k - 1] =
        ((2.0 * k + 1.0) * tau * trial[k] - (k + 1.0) * trial[k + 1]) /
        double(k);
  const cplx scale = q0 / trial[0];
  for (int m = 0; m < kPanelNodes; ++m) q[m] = trial[m] * scale;
  return q;
}

// s''(t)/(2 s'(t)): the removable-singularity limit of the subtraction
// term. Constant on arcs, zero on segments.
cplx half_log_derivative(const Panel& p) {
  if (p.kind == Panel::Kind::kSegment) return 0.0;
  return cplx(0.0, 0.25 * (p.ang1 - p.ang0));
}

PanelWeights far_weights(const Panel& p, cplx zeta) {
  const GaussRule& g = rule();
  PanelWeights lam;
  for (int j = 0; j < kPanelNodes; ++j)
    lam[j] = kInv2PiI * g.w[j] * p.dnode[j] / (p.node[j] - zeta);
  return lam;
}

// Close/boundary weights via singularity subtraction: the 1/(t - tau) part
// integrates exactly through the Legendre moments, the remainder is smooth.
// self_node >= 0 marks the boundary case zeta = node[self_node],
// tau = t_{self_node}.
PanelWeights close_weights(const Panel& p, cplx zeta, cplx tau, int self_node,
                           int side) {
  const GaussRule& g = rule();
  const auto q = legendre_cauchy_moments(tau, side);
  PanelWeights lam;
  for (int j = 0; j < kPanelNodes; ++j) {
    cplx smooth;
    if (j == self_node)
      smooth = half_log_derivative(p);
    else
      smooth = p.dnode[j] / (p.node[j] - zeta) - 1.0 / (g.t[j] - tau);
    cplx proj = 0.0;
    for (int m = 0; m < kPanelNodes; ++m)
      proj += 0.5 * (2.0 * m + 1.0) * g.legendre[m][j] * q[m];
    lam[j] = kInv2PiI * g.w[j] * (smooth + proj);
  }
  return lam;
}

cplx dot(const PanelWeights& lam, const PanelValues& psi) {
  cplx r = 0.0;
  for (int j = 0; j < kPanelNodes; ++j) r += lam[j] * psi[j];
  return r;
}

Mat2C dot(const PanelWeights& lam, const PanelMatValues& psi) {
  Mat2C r = Mat2C::Zero();
  for (int j = 0; j < kPanelNodes; ++j) r += lam[j] * psi[j];
  return r;
}

}  // namespace

Panel make_segment_panel(cplx a, cplx b) {
  if (a == b) throw std::invalid_argument("degenerate segment panel");
  Panel p;
  p.kind = Panel::Kind::kSegment;
  p.a = a;
  p.b = b;
  const GaussRule& g = rule();
  for (int j = 0; j < kPanelNodes; ++j) {
    p.node[j] = panel_point(p, g.t[j]);
    p.dnode[j] = panel_derivative(p, g.t[j]);
  }
  return p;
}

Panel make_arc_panel(cplx center, double radius, double ang0, double ang1) {
  if (!(radius > 0.0)) throw std::invalid_argument("arc needs radius > 0");
  if (ang0 == ang1) throw std::invalid_argument("degenerate arc panel");
  Panel p;
  p.kind = Panel::Kind::kArc;
  p.center = center;
  p.radius = radius;
  p.ang0 = ang0;
  p.ang1 = ang1;
  const GaussRule& g = rule();
  for (int j = 0; j < kPanelNodes; ++j) {
    p.node[j] = panel_point(p, g.t[j]);
    p.dnode[j] = panel_derivative(p, g.t[j]);
  }
  return p;
}

const std::array<double, kPanelNodes>& gauss_nodes() { return rule().t; }
const std::array<double, kPanelNodes>& gauss_weights() { return rule().w; }

cplx panel_pullback(const Panel& p, cplx zeta) {
  if (p.kind == Panel::Kind::kSegment)
    return (zeta - 0.5 * (p.a + p.b)) / (0.5 * (p.b - p.a));
  const double mid = 0.5 * (p.ang0 + p.ang1);
  const double h = 0.5 * (p.ang1 - p.ang0);
  const double r = std::max(std::abs(zeta - p.center), 1e-300);
  double d = std::arg(zeta - p.center) - mid;
  d -= 2.0 * kPi * std::round(d / (2.0 * kPi));
  return cplx(d, -std::log(r / p.radius)) / h;
}

double bernstein_radius(cplx tau) {
  const cplx s = std::sqrt(tau * tau - 1.0);
  return std::max(std::abs(tau + s), std::abs(tau - s));
}

PanelWeights panel_cauchy_weights(const Panel& p, cplx zeta) {
  const cplx tau = panel_pullback(p, zeta);
  if (tau.imag() == 0.0 && std::abs(tau.real()) <= 1.0)
    throw std::domain_error(
        "target on the panel: boundary evaluation needs a side");
  if (bernstein_radius(tau) > kCloseRho) return far_weights(p, zeta);
  return close_weights(p, zeta, tau, -1, 0);
}

PanelWeights panel_cauchy_weights_boundary(const Panel& p, int node,
                                           int side) {
  if (node < 0 || node >= kPanelNodes)
    throw std::invalid_argument("boundary node index out of range");
  if (side != 1 && side != -1)
    throw std::invalid_argument("boundary evaluation needs side +1 or -1");
  return close_weights(p, p.node[node], rule().t[node], node, side);
}

cplx panel_cauchy(const Panel& p, const PanelValues& psi, cplx zeta) {
  return dot(panel_cauchy_weights(p, zeta), psi);
}

cplx panel_cauchy_boundary(const Panel& p, const PanelValues& psi, int node,
                           int side) {
  return dot(panel_cauchy_weights_boundary(p, node, side), psi);
}

Mat2C panel_cauchy(const Panel& p, const PanelMatValues& psi, cplx zeta) {
  return dot(panel_cauchy_weights(p, zeta), psi);
}

Mat2C panel_cauchy_boundary(const Panel& p, const PanelMatValues& psi,
                            int node, int side) {
  return dot(panel_cauchy_weights_boundary(p, node, side), psi);
}

cplx panel_moment(const Panel& p, const PanelValues& psi) {
  const GaussRule& g = rule();
  cplx r = 0.0;
  for (int j = 0; j < kPanelNodes; ++j)
    r += g.w[j] * p.dnode[j] * psi[j];
  return kInv2PiI * r;
}

Mat2C panel_moment(const Panel& p, const PanelMatValues& psi) {
  const GaussRule& g = rule();
  Mat2C r = Mat2C::Zero();
  for (int j = 0; j < kPanelNodes; ++j)
    r += g.w[j] * p.dnode[j] * psi[j];
  return kInv2PiI * r;
}

}  // namespace pi2
