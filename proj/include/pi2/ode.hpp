// Boundary-value ODE engine for y(x,T) on a finite window [-L, L].
//
// The fourth-order equation (see lax.hpp) is written as a first-order
// system u = (y, y', y'', y''') and discretized with a 4th-order
// mono-implicit Runge-Kutta (MIRK4) collocation scheme on a graded mesh
// (denser near x = 0 where the profile bends):
//   u_{i+1} - u_i = (h/6) (f_i + 4 f_m + f_{i+1}),
//   u_m = (u_i + u_{i+1})/2 + (h/8)(f_i - f_{i+1}).
// Boundary data comes from the leading law y = (1/2) z0(x,T) |x|^{1/3}:
// value and slope at both ends (the slope through dz0/dx by implicit
// differentiation of the z0 cubic), giving an O(L^{-2}) boundary error.
// The nonlinear system is solved by Newton iteration with residual-monotone
// step halving; failures are surfaced, never hidden.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pi2/lax.hpp"

namespace pi2 {

enum class EngineTag { ode, rh, asymptotic };
const char* engine_tag_name(EngineTag tag);

// A solved (or sampled) profile on [-L, L].
struct SolutionGrid {
  double T = 0.0;
  std::vector<double> nodes;  // strictly increasing, spanning [-L, L]
  std::vector<Jet4> jets;     // one per node, y_xxxx filled from the ODE
  EngineTag engine_tag = EngineTag::ode;
  double residual_norm = 0.0;  // sup-norm of the collocation residual
  double boundary_L = 0.0;
};

struct BVPConfig {
  double L = 20.0;            // window half-width
  double mesh_density = 16.0; // nodes per unit of x
  double newton_tol = 1e-10;  // sup-norm target for the discrete residual
  int newton_max_iter = 50;
  double damping = 1.0;       // initial Newton step factor
};

// Thrown when Newton (or continuation) gives up; carries the best iterate's
// residual for diagnosis.
class SolveFailure : public std::runtime_error {
 public:
  SolveFailure(const std::string& what, double best_residual, int iterations)
      : std::runtime_error(what),
        best_residual(best_residual),
        iterations(iterations) {}
  double best_residual;
  int iterations;
};

struct BoundaryValues {
  double y_minus, yp_minus, y_plus, yp_plus;
};

// y and y' at x = -L and x = +L from the leading law.
BoundaryValues boundary_values(double L, double T);

// Solve the two-point problem at fixed T. The optional guess is sampled
// through jet_at (any window/mesh); by default the blended leading-law
// profile seeds Newton. Throws SolveFailure ("no convergence") if damping
// is exhausted or the iteration cap is hit.
SolutionGrid solve_bvp(const BVPConfig& cfg, double T,
                       const SolutionGrid* initial_guess = nullptr);

// Solve T = 0 first, then walk outward to each target, reusing the previous
// grid as the guess and halving the T-step on failure (minimum step 1e-3).
// Targets must be sorted away from zero within each sign. Returns grids in
// the input order.
std::vector<SolutionGrid> continuation_in_T(const BVPConfig& cfg,
                                            const std::vector<double>& T_targets);

// Jet at any x in [-L, L]: stored jet at nodes, quintic two-point Hermite
// (y, y', y'' both ends) in between; y_xxxx always from the ODE. Throws
// std::domain_error outside the window.
Jet4 jet_at(const SolutionGrid& grid, double x);

// CSV: header `x,y,y_x,y_xx,y_xxx,residual`, one row per node, 17
// significant digits.
void write_solution_csv(const SolutionGrid& grid, std::ostream& os);

}  // namespace pi2
