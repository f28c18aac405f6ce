// Residual solve implementation: jump evaluation on the assembled contour,
// Neumann / dense Nystrom solution of the boundary relation, moment and
// solution-value extraction. See rh_solve.hpp for the conventions.
#include "pi2/rh_solve.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "pi2/airy.hpp"
#include "pi2/branched_power.hpp"
#include "pi2/rh_cauchy.hpp"

namespace pi2 {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLegAngle = 6.0 * kPi / 7.0;

// q(u) = (3/2)(c3 + c2 u + c1 u^2): the cube of f'(z0)-scale local factor;
// q(0) = (3/2) c3 > 0 and Re q > 0 on the whole matching disk.
cplx q_of(cplx u, const GFunction& G) {
  return 1.5 * (G.c3 + u * (G.c2 + u * G.c1));
}

// w = |x|^{7/9} f(zeta): the model argument on the matching disk.
cplx w_of(cplx zeta, const GFunction& G) {
  return std::pow(std::abs(G.x), 7.0 / 9.0) * conformal_f(zeta, G);
}

// Which piece of the contour a jump evaluation lives on.
enum class Part { kCircle, kLegUpper, kLegLower, kLegRight };

// exp(-+2|x|^{7/6} g) P_out E_offdiag P_out^{-1}: the leg deviation from I.
Mat2C leg_deviation(Part part, cplx s, const GFunction& G) {
  const double scale = 2.0 * std::pow(std::abs(G.x), 7.0 / 6.0);
  const cplx g = g_eval(s, G);
  const Mat2C pout = parametrix_outer(s, G);
  if (part == Part::kLegRight) {
    const Mat2C e12 = mat2(0.0, 1.0, 0.0, 0.0);
    return std::exp(-scale * g) * (pout * e12 * mat2_inv(pout));
  }
  const Mat2C e21 = mat2(0.0, 0.0, 1.0, 0.0);
  return std::exp(scale * g) * (pout * e21 * mat2_inv(pout));
}

Mat2C jump_on(Part part, cplx s, const ContourSet& C) {
  if (part == Part::kCircle) {
    // E (M N^{-1} w^{sigma3/4}) E^{-1}; every node sits off the four ray
    // preimages (the builder splits the circle exactly at their exits), so
    // no side is ever needed here.
    const cplx w = w_of(s, C.G);
    const cplx w4 = std::pow(w, 0.25);
    const Mat2C a = airy_model_M(w, C.sigma) * mat2_inv(model_N()) *
                    mat2(w4, 0.0, 0.0, 1.0 / w4);
    const Mat2C e = local_prefactor(s, C.G);
    return e * a * mat2_inv(e);
  }
  return Mat2C::Identity() + leg_deviation(part, s, C.G);
}

// Panel list with the part tag needed for direct jump evaluation.
struct TaggedPanel {
  const Panel* panel;
  Part part;
};

std::vector<TaggedPanel> gather_panels(const ContourSet& C) {
  std::vector<TaggedPanel> out;
  out.reserve(C.circle.size() + C.leg_upper.size() + C.leg_lower.size() +
              C.leg_right.size());
  for (const Panel& p : C.circle) out.push_back({&p, Part::kCircle});
  for (const Panel& p : C.leg_upper) out.push_back({&p, Part::kLegUpper});
  for (const Panel& p : C.leg_lower) out.push_back({&p, Part::kLegLower});
  for (const Panel& p : C.leg_right) out.push_back({&p, Part::kLegRight});
  return out;
}

// Influence matrix: row = global node as target, column = global node as
// source; the own-panel block takes the minus-side boundary limit, so
// L * psi evaluates C^-[psi] at every node in one multiply.
Eigen::MatrixXcd influence_matrix(const std::vector<TaggedPanel>& ps) {
  const int np = static_cast<int>(ps.size());
  const int n = np * kPanelNodes;
  Eigen::MatrixXcd L(n, n);
  for (int p = 0; p < np; ++p) {
    for (int i = 0; i < kPanelNodes; ++i) {
      const int row = p * kPanelNodes + i;
      const cplx target = ps[p].panel->node[i];
      for (int q = 0; q < np; ++q) {
        const PanelWeights w =
            (q == p) ? panel_cauchy_weights_boundary(*ps[p].panel, i, -1)
                     : panel_cauchy_weights(*ps[q].panel, target);
        for (int j = 0; j < kPanelNodes; ++j)
          L(row, q * kPanelNodes + j) = w[j];
      }
    }
  }
  return L;
}

using NodeMats = std::vector<Mat2C>;

// C^- of a matrix density known at the nodes: out_i = sum_j L_ij W_j.
NodeMats apply_cminus(const Eigen::MatrixXcd& L, const NodeMats& W) {
  const int n = static_cast<int>(W.size());
  NodeMats out(n, Mat2C::Zero());
  for (int i = 0; i < n; ++i) {
    Mat2C acc = Mat2C::Zero();
    for (int j = 0; j < n; ++j) acc += L(i, j) * W[j];
    out[i] = acc;
  }
  return out;
}

// (1/2pi i) int psi ds summed over all panels.
Mat2C total_moment(const std::vector<TaggedPanel>& ps, const NodeMats& W) {
  Mat2C acc = Mat2C::Zero();
  for (std::size_t p = 0; p < ps.size(); ++p) {
    PanelMatValues chunk;
    for (int j = 0; j < kPanelNodes; ++j) chunk[j] = W[p * kPanelNodes + j];
    acc += panel_moment(*ps[p].panel, chunk);
  }
  return acc;
}

NodeMats times_jump(const NodeMats& mu, const NodeMats& V, bool plus_identity) {
  NodeMats out(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) {
    Mat2C m = mu[i];
    if (plus_identity) m += Mat2C::Identity();
    out[i] = m * V[i];
  }
  return out;
}

// Dense Nystrom solve of mu = C^-[(I + mu) V]. The two rows of mu satisfy
// the same scalar-weight system A x = rhs with
// A[(i,c),(j,b)] = delta - L_ij V_j(b,c); one LU, two right-hand sides.
NodeMats dense_solve(const Eigen::MatrixXcd& L, const NodeMats& V) {
  const int n = static_cast<int>(V.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 2; ++b)
          A(2 * i + c, 2 * j + b) -= L(i, j) * V[j](b, c);
  Eigen::MatrixXcd rhs(2 * n, 2);
  const NodeMats cv = apply_cminus(L, V);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < 2; ++c)
      for (int a = 0; a < 2; ++a) rhs(2 * i + c, a) = cv[i](a, c);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  if (lu.rcond() < 1e-12)
    throw std::runtime_error("dense solve ill-conditioned");
  const Eigen::MatrixXcd sol = lu.solve(rhs);
  NodeMats mu(n, Mat2C::Zero());
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < 2; ++c)
      for (int a = 0; a < 2; ++a) mu[i](a, c) = sol(2 * i + c, a);
  return mu;
}

}  // namespace

Mat2C parametrix_outer(cplx zeta, const GFunction& G, int side) {
  const BranchedPower quarter{cplx(G.z0, 0.0), -0.25, kPi};
  const cplx up = branched_power_eval(quarter, zeta, side);
  const double xs = std::pow(std::abs(G.x), 1.0 / 12.0);
  return mat2(up / xs, 0.0, 0.0, xs / up) * model_N();
}

Mat2C local_prefactor(cplx zeta, const GFunction& G) {
  const cplx q = q_of(zeta - cplx(G.z0, 0.0), G);
  if (q.real() <= 0.0) throw std::runtime_error("f not conformal here");
  const cplx e = std::pow(std::abs(G.x), 1.0 / 9.0) * std::pow(q, 1.0 / 6.0);
  return mat2(e, 0.0, 0.0, 1.0 / e);
}

Mat2C parametrix_local(cplx zeta, const ContourSet& C) {
  return local_prefactor(zeta, C.G) * airy_model_M(w_of(zeta, C.G), C.sigma);
}

Mat2C jump_vR(cplx s, const ContourSet& C) {
  const cplx u = s - cplx(C.G.z0, 0.0);
  const double r = std::abs(u);
  const double tol = 1e-10 * (1.0 + C.delta);
  if (std::abs(r - C.delta) <= tol) return jump_on(Part::kCircle, s, C);
  if (r >= C.delta - tol) {
    const double a = std::arg(u);
    if (std::abs(a - kLegAngle) <= 1e-10)
      return jump_on(Part::kLegUpper, s, C);
    if (std::abs(a + kLegAngle) <= 1e-10)
      return jump_on(Part::kLegLower, s, C);
    if (std::abs(a) <= 1e-10) return jump_on(Part::kLegRight, s, C);
  }
  throw std::domain_error("point is not on the contour");
}

std::pair<Mat2C, Mat2C> delta_residues(const GFunction& G) {
  const double q0 = 1.5 * G.c3;
  const double t1 = airy_coeffs(1).t_k;
  const double s1 = airy_coeffs(1).s_k;
  const Mat2C res1 = mat2(0.0, 0.0, t1 / q0, 0.0);
  // Res of s1 q^{-1} u^{-2} E12 at u = 0: s1 (d/du) q^{-1} = -s1 q'(0)/q0^2.
  const Mat2C res2 = mat2(0.0, -s1 * 1.5 * G.c2 / (q0 * q0), 0.0, 0.0);
  return {res1, res2};
}

RMoments solve_R(double x, double T, const SolveConfig& cfg) {
  if (cfg.neumann_order < 1 || cfg.neumann_order > 12)
    throw std::invalid_argument("neumann order must be in [1, 12]");
  const ContourSet C = build_contour(x, T, cfg.delta);
  const std::vector<TaggedPanel> ps = gather_panels(C);
  const int n = static_cast<int>(ps.size()) * kPanelNodes;

  NodeMats V(n);
  double maxdev = 0.0;
  for (std::size_t p = 0; p < ps.size(); ++p)
    for (int j = 0; j < kPanelNodes; ++j) {
      const Mat2C v = jump_on(ps[p].part, ps[p].panel->node[j], C);
      V[p * kPanelNodes + j] = v - Mat2C::Identity();
      maxdev = std::max(maxdev, mat2_norm(v - Mat2C::Identity()));
    }

  const Eigen::MatrixXcd L = influence_matrix(ps);

  NodeMats mu(n, Mat2C::Zero());
  NodeMats mu_prev(n, Mat2C::Zero());
  if (cfg.dense) {
    mu = dense_solve(L, V);
  } else {
    for (int k = 0; k < cfg.neumann_order; ++k) {
      mu_prev = mu;
      mu = apply_cminus(L, times_jump(mu_prev, V, /*plus_identity=*/true));
    }
  }

  RMoments m;
  m.x = x;
  m.T = T;
  m.neumann_order = cfg.dense ? 0 : cfg.neumann_order;
  m.max_jump_deviation = maxdev;
  m.panel_count = static_cast<int>(ps.size());
  m.R1 = -total_moment(ps, times_jump(mu, V, /*plus_identity=*/true));

  // First neglected correction: one further sweep moves mu by
  // C^-[(mu - mu_prev_for_that_sweep) V]; its moment bounds the truncation.
  const NodeMats next =
      cfg.dense
          ? [&] {
              NodeMats d = apply_cminus(
                  L, times_jump(mu, V, /*plus_identity=*/true));
              for (int i = 0; i < n; ++i) d[i] -= mu[i];
              return d;
            }()
          : apply_cminus(L, [&] {
              NodeMats d(n);
              for (int i = 0; i < n; ++i) d[i] = mu[i] - mu_prev[i];
              return times_jump(d, V, /*plus_identity=*/false);
            }());
  double est = mat2_norm(total_moment(ps, times_jump(next, V, false)));
  if (cfg.dense) est = std::max(est, 1e-12);
  m.est_error = est;
  return m;
}

double extract_y(const RMoments& m, const GFunction& G) {
  if (m.x != G.x || m.T != G.T)
    throw std::invalid_argument("moments and phase bundle disagree");
  const double ax = std::abs(G.x);
  const double x13 = std::cbrt(ax);
  const cplx r11 = m.R1(0, 0);
  const cplx r12 = m.R1(0, 1);
  const cplx y = 0.5 * G.z0 * x13 + 2.0 * x13 * r11 -
                 x13 * x13 * (r12 * r12);
  if (std::abs(y.imag()) > 1e-8 * (1.0 + std::abs(y.real())))
    throw std::runtime_error("nonreal extraction");
  return y.real();
}

std::string rh_report_json(const ContourSet& C, const RMoments& m, double y) {
  nlohmann::ordered_json j;
  j["x"] = C.x;
  j["T"] = C.T;
  j["sigma"] = C.sigma;
  j["delta"] = C.delta;
  j["panel_count"] = m.panel_count;
  j["max_jump_deviation"] = m.max_jump_deviation;
  auto entry = [&](int a, int b) {
    return nlohmann::ordered_json::array(
        {m.R1(a, b).real(), m.R1(a, b).imag()});
  };
  j["R1"] = {{"11", entry(0, 0)},
             {"12", entry(0, 1)},
             {"21", entry(1, 0)},
             {"22", entry(1, 1)}};
  j["y"] = y;
  j["est_error"] = m.est_error;
  return j.dump();
}

}  // namespace pi2
