#include "pi2/ode.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <ostream>

#include "pi2/asymptotics.hpp"
#include "pi2/fmt.hpp"

namespace pi2 {

namespace {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using SpMat = Eigen::SparseMatrix<double>;

constexpr double kCbrt6 = 1.8171205928321396589;  // 6^{1/3}
constexpr double kMeshGrading = 0.55;             // dx/dxi ratio ends:center ~ 3.5

Vec4 rhs_f(double x, double T, const Vec4& u) {
  return Vec4(u[1], u[2], u[3],
              pi2_fourth_derivative(u[0], u[1], u[2], x, T));
}

Mat4 rhs_jac(double T, const Vec4& u) {
  Mat4 J = Mat4::Zero();
  J(0, 1) = J(1, 2) = J(2, 3) = 1.0;
  J(3, 0) = 240.0 * T - 120.0 * u[0] * u[0] - 20.0 * u[2];
  J(3, 1) = -20.0 * u[1];
  J(3, 2) = -20.0 * u[0];
  return J;
}

std::vector<double> graded_mesh(double L, double density) {
  const int n = std::max(8, (int)std::lround(2.0 * L * density));
  std::vector<double> xs(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double xi = -1.0 + 2.0 * double(j) / n;
    xs[j] = L * xi * (kMeshGrading + (1.0 - kMeshGrading) * xi * xi);
  }
  xs.front() = -L;
  xs.back() = L;
  return xs;
}

// Leading-law profile, blended through [-1, 1] by the odd cubic that
// matches value and slope at x = +-1 (the z0 law is undefined at x = 0).
void guess_profile(double x, double* y, double* y1, double* y2, double* y3) {
  const double a = -(4.0 / 3.0) * kCbrt6;
  const double b = (1.0 / 3.0) * kCbrt6;
  if (std::abs(x) < 1.0) {
    *y = x * (a + b * x * x);
    *y1 = a + 3.0 * b * x * x;
    *y2 = 6.0 * b * x;
    *y3 = 6.0 * b;
    return;
  }
  const double s = x < 0.0 ? -1.0 : 1.0;
  const double t = std::abs(x);
  *y = -s * kCbrt6 * std::cbrt(t);
  *y1 = -(1.0 / 3.0) * kCbrt6 * std::pow(t, -2.0 / 3.0);
  *y2 = (2.0 / 9.0) * kCbrt6 * std::pow(t, -5.0 / 3.0) * s;
  *y3 = -(10.0 / 27.0) * kCbrt6 * std::pow(t, -8.0 / 3.0);
}

void validate(const BVPConfig& cfg) {
  if (!(cfg.L > 0.0)) throw std::invalid_argument("window half-width must be positive");
  if (!(cfg.mesh_density >= 1.0))
    throw std::invalid_argument("mesh density must be at least 1 node per unit");
  if (!(cfg.newton_tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (cfg.newton_max_iter < 1) throw std::invalid_argument("iteration cap must be positive");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
    throw std::invalid_argument("damping factor must lie in (0, 1]");
}

}  // namespace

const char* engine_tag_name(EngineTag tag) {
  switch (tag) {
    case EngineTag::ode: return "ode";
    case EngineTag::rh: return "rh";
    case EngineTag::asymptotic: return "asymptotic";
  }
  return "unknown";
}

BoundaryValues boundary_values(double L, double T) {
  if (!(L > 0.0)) throw std::invalid_argument("window half-width must be positive");
  const auto side = [&](double x) {
    const GFunction G = solve_z0(x, T);
    const double s = x < 0.0 ? -1.0 : 1.0;
    const double t = std::abs(x);
    // dz0/dx by implicit differentiation of z^3 - 24 T t^{-2/3} z + 48 s.
    const double t_hat = T * std::pow(t, -2.0 / 3.0);
    const double z0p = -16.0 * T * G.z0 * s * std::pow(t, -5.0 / 3.0) /
                       (3.0 * G.z0 * G.z0 - 24.0 * t_hat);
    const double y = 0.5 * G.z0 * std::cbrt(t);
    const double yp =
        0.5 * z0p * std::cbrt(t) + (G.z0 / 6.0) * std::pow(t, -2.0 / 3.0) * s;
    return std::pair<double, double>(y, yp);
  };
  const auto [ym, ypm] = side(-L);
  const auto [yp, ypp] = side(L);
  return {ym, ypm, yp, ypp};
}

SolutionGrid solve_bvp(const BVPConfig& cfg, double T,
                       const SolutionGrid* initial_guess) {
  validate(cfg);
  const std::vector<double> xs = graded_mesh(cfg.L, cfg.mesh_density);
  const int n = (int)xs.size() - 1;
  const int dim = 4 * (n + 1);
  const BoundaryValues bc = boundary_values(cfg.L, T);

  Eigen::VectorXd U(dim);
  for (int i = 0; i <= n; ++i) {
    double y, y1, y2, y3;
    if (initial_guess != nullptr && !initial_guess->nodes.empty()) {
      const double xc = std::clamp(xs[i], initial_guess->nodes.front(),
                                   initial_guess->nodes.back());
      const Jet4 j = jet_at(*initial_guess, xc);
      y = j.y;
      y1 = j.y_x;
      y2 = j.y_xx;
      y3 = j.y_xxx;
    } else {
      guess_profile(xs[i], &y, &y1, &y2, &y3);
    }
    U.segment<4>(4 * i) << y, y1, y2, y3;
  }

  const auto assemble_residual = [&](const Eigen::VectorXd& V,
                                     Eigen::VectorXd& R) {
    R.resize(dim);
    R[0] = V[0] - bc.y_minus;
    R[1] = V[1] - bc.yp_minus;
    for (int i = 0; i < n; ++i) {
      const Vec4 ui = V.segment<4>(4 * i);
      const Vec4 uj = V.segment<4>(4 * i + 4);
      const double h = xs[i + 1] - xs[i];
      const Vec4 fi = rhs_f(xs[i], T, ui);
      const Vec4 fj = rhs_f(xs[i + 1], T, uj);
      const Vec4 um = 0.5 * (ui + uj) + (h / 8.0) * (fi - fj);
      const Vec4 fm = rhs_f(0.5 * (xs[i] + xs[i + 1]), T, um);
      R.segment<4>(2 + 4 * i) = uj - ui - (h / 6.0) * (fi + 4.0 * fm + fj);
    }
    R[dim - 2] = V[4 * n] - bc.y_plus;
    R[dim - 1] = V[4 * n + 1] - bc.yp_plus;
  };

  const auto assemble_jacobian = [&](const Eigen::VectorXd& V) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(36 * n + 8);
    trip.emplace_back(0, 0, 1.0);
    trip.emplace_back(1, 1, 1.0);
    const Mat4 I = Mat4::Identity();
    for (int i = 0; i < n; ++i) {
      const Vec4 ui = V.segment<4>(4 * i);
      const Vec4 uj = V.segment<4>(4 * i + 4);
      const double h = xs[i + 1] - xs[i];
      const Vec4 fi = rhs_f(xs[i], T, ui);
      const Vec4 fj = rhs_f(xs[i + 1], T, uj);
      const Vec4 um = 0.5 * (ui + uj) + (h / 8.0) * (fi - fj);
      const Mat4 Ji = rhs_jac(T, ui);
      const Mat4 Jj = rhs_jac(T, uj);
      const Mat4 Jm = rhs_jac(T, um);
      const Mat4 A =
          -I - (h / 6.0) * (Ji + 4.0 * Jm * (0.5 * I + (h / 8.0) * Ji));
      const Mat4 B =
          I - (h / 6.0) * (Jj + 4.0 * Jm * (0.5 * I - (h / 8.0) * Jj));
      const int r0 = 2 + 4 * i;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          if (A(r, c) != 0.0) trip.emplace_back(r0 + r, 4 * i + c, A(r, c));
          if (B(r, c) != 0.0) trip.emplace_back(r0 + r, 4 * i + 4 + c, B(r, c));
        }
    }
    trip.emplace_back(dim - 2, 4 * n, 1.0);
    trip.emplace_back(dim - 1, 4 * n + 1, 1.0);
    SpMat A(dim, dim);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
  };

  Eigen::VectorXd R(dim), Rnew(dim), Vnew(dim);
  assemble_residual(U, R);
  double rn = R.lpNorm<Eigen::Infinity>();
  double best = rn;

  Eigen::SparseLU<SpMat> lu;
  int iter = 0;
  for (; iter < cfg.newton_max_iter && rn > cfg.newton_tol; ++iter) {
    const SpMat A = assemble_jacobian(U);
    lu.compute(A);
    if (lu.info() != Eigen::Success)
      throw SolveFailure("no convergence: singular collocation Jacobian", best,
                         iter);
    const Eigen::VectorXd dU = lu.solve(-R);
    double lambda = cfg.damping;
    for (;;) {
      Vnew = U + lambda * dU;
      assemble_residual(Vnew, Rnew);
      const double rnew = Rnew.lpNorm<Eigen::Infinity>();
      if (std::isfinite(rnew) && rnew < rn) {
        U.swap(Vnew);
        R.swap(Rnew);
        rn = rnew;
        break;
      }
      lambda *= 0.5;
      if (lambda < 1e-7)
        throw SolveFailure("no convergence: damping exhausted", best, iter);
    }
    best = std::min(best, rn);
  }
  if (rn > cfg.newton_tol)
    throw SolveFailure("no convergence: iteration cap reached", rn, iter);

  SolutionGrid g;
  g.T = T;
  g.nodes = xs;
  g.jets.resize(n + 1);
  g.engine_tag = EngineTag::ode;
  g.residual_norm = rn;
  g.boundary_L = cfg.L;
  for (int i = 0; i <= n; ++i) {
    Jet4& j = g.jets[i];
    j.y = U[4 * i];
    j.y_x = U[4 * i + 1];
    j.y_xx = U[4 * i + 2];
    j.y_xxx = U[4 * i + 3];
    j.y_xxxx = pi2_fourth_derivative(j.y, j.y_x, j.y_xx, xs[i], T);
    j.x = xs[i];
    j.T = T;
  }
  return g;
}

std::vector<SolutionGrid> continuation_in_T(
    const BVPConfig& cfg, const std::vector<double>& T_targets) {
  std::vector<double> pos, neg;
  for (double t : T_targets) (t >= 0.0 ? pos : neg).push_back(t);
  if (!std::is_sorted(pos.begin(), pos.end()) ||
      !std::is_sorted(neg.begin(), neg.end(), std::greater<double>()))
    throw std::invalid_argument(
        "continuation targets must be sorted away from T = 0");

  const SolutionGrid base = solve_bvp(cfg, 0.0);
  std::vector<SolutionGrid> results(T_targets.size());

  const auto walk = [&](bool negative) {
    SolutionGrid current = base;
    double t_cur = 0.0;
    for (std::size_t idx = 0; idx < T_targets.size(); ++idx) {
      const double t_target = T_targets[idx];
      if ((t_target < 0.0) != negative) continue;
      if (t_target == 0.0) {
        results[idx] = base;
        continue;
      }
      double step = t_target - t_cur;
      while (t_cur != t_target) {
        const double t_try =
            std::abs(t_target - t_cur) <= std::abs(step) ? t_target
                                                         : t_cur + step;
        try {
          SolutionGrid next = solve_bvp(cfg, t_try, &current);
          current = std::move(next);
          t_cur = t_try;
          // Regrow after success so one hard spot does not slow the
          // remainder of the walk.
          if (std::abs(step) < std::abs(t_target - t_cur)) step *= 2.0;
        } catch (const SolveFailure& f) {
          step *= 0.5;
          if (std::abs(step) < 1e-3)
            throw SolveFailure("no convergence past T = " + fmt17(t_cur),
                               f.best_residual, f.iterations);
        }
      }
      results[idx] = current;
    }
  };
  walk(false);
  walk(true);
  return results;
}

Jet4 jet_at(const SolutionGrid& grid, double x) {
  if (grid.nodes.size() < 2 || grid.jets.size() != grid.nodes.size())
    throw std::invalid_argument("malformed solution grid");
  const double lo = grid.nodes.front(), hi = grid.nodes.back();
  const double slack = 1e-9 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  if (x < lo - slack || x > hi + slack)
    throw std::domain_error("jet requested outside the solution window");
  const double xc = std::clamp(x, lo, hi);

  const auto it =
      std::upper_bound(grid.nodes.begin(), grid.nodes.end(), xc);
  int i = (int)std::distance(grid.nodes.begin(), it) - 1;
  i = std::clamp(i, 0, (int)grid.nodes.size() - 2);

  // Exact node hit: hand back the stored jet.
  for (int k : {i, i + 1})
    if (std::abs(xc - grid.nodes[k]) <= 1e-12 * std::max(1.0, std::abs(xc)))
      return grid.jets[k];

  const double x0 = grid.nodes[i], x1 = grid.nodes[i + 1];
  const double h = x1 - x0;
  const double t = (xc - x0) / h;
  const Jet4& a = grid.jets[i];
  const Jet4& b = grid.jets[i + 1];

  // Two-point quintic Hermite basis (value, slope, curvature at both ends)
  // and its first three tau-derivatives.
  const double H[6] = {
      1 + t * t * t * (-10 + t * (15 - 6 * t)),
      t + t * t * t * (-6 + t * (8 - 3 * t)),
      0.5 * t * t + t * t * t * (-1.5 + t * (1.5 - 0.5 * t)),
      t * t * t * (10 + t * (-15 + 6 * t)),
      t * t * t * (-4 + t * (7 - 3 * t)),
      t * t * t * (0.5 + t * (-1 + 0.5 * t))};
  const double H1[6] = {
      t * t * (-30 + t * (60 - 30 * t)),
      1 + t * t * (-18 + t * (32 - 15 * t)),
      t + t * t * (-4.5 + t * (6 - 2.5 * t)),
      t * t * (30 + t * (-60 + 30 * t)),
      t * t * (-12 + t * (28 - 15 * t)),
      t * t * (1.5 + t * (-4 + 2.5 * t))};
  const double H2[6] = {
      t * (-60 + t * (180 - 120 * t)),
      t * (-36 + t * (96 - 60 * t)),
      1 + t * (-9 + t * (18 - 10 * t)),
      t * (60 + t * (-180 + 120 * t)),
      t * (-24 + t * (84 - 60 * t)),
      t * (3 + t * (-12 + 10 * t))};
  const double H3[6] = {
      -60 + t * (360 - 360 * t), -36 + t * (192 - 180 * t),
      -9 + t * (36 - 30 * t),    60 + t * (-360 + 360 * t),
      -24 + t * (168 - 180 * t), 3 + t * (-24 + 30 * t)};

  const double c[6] = {a.y,     h * a.y_x, h * h * a.y_xx,
                       b.y,     h * b.y_x, h * h * b.y_xx};
  double v[4] = {0, 0, 0, 0};
  for (int k = 0; k < 6; ++k) {
    v[0] += c[k] * H[k];
    v[1] += c[k] * H1[k];
    v[2] += c[k] * H2[k];
    v[3] += c[k] * H3[k];
  }

  Jet4 j;
  j.y = v[0];
  j.y_x = v[1] / h;
  j.y_xx = v[2] / (h * h);
  j.y_xxx = v[3] / (h * h * h);
  j.y_xxxx = pi2_fourth_derivative(j.y, j.y_x, j.y_xx, xc, grid.T);
  j.x = xc;
  j.T = grid.T;
  return j;
}

void write_solution_csv(const SolutionGrid& grid, std::ostream& os) {
  os << "x,y,y_x,y_xx,y_xxx,residual\n";
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const Jet4& j = grid.jets[i];
    os << fmt17(grid.nodes[i]) << ',' << fmt17(j.y) << ',' << fmt17(j.y_x)
       << ',' << fmt17(j.y_xx) << ',' << fmt17(j.y_xxx) << ','
       << fmt17(std::abs(pi2_residual(j))) << '\n';
  }
}

}  // namespace pi2
