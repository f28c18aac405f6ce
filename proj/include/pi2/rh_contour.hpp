// Contour assembly for the deformed Riemann-Hilbert problem at large |x|.
//
// The reduced problem lives on a disk boundary around z0 plus three exterior
// legs where the conjugated jumps are not yet identity:
//
//   circle     |zeta - z0| = delta, traversed CLOCKWISE so that the + side
//              (left of travel) is the exterior; split at the four junction
//              angles {0, 6pi/7, pi, -6pi/7} where legs attach or the
//              (-inf, z0] branch cut crosses, and subdivided to arcs of at
//              most ~0.45 rad;
//   leg_upper  {z0 + t e^{+6pi i/7}, t >= delta}, traversed toward the disk;
//   leg_lower  the mirror ray at -6pi/7, traversed toward the disk;
//   leg_right  {z0 + t, t >= delta} on the real axis, traversed away from
//              the disk.
//
// Ray directions follow the usual left-to-right orientation of the
// undeformed jump rays; the jump data on the legs decays like
// exp(-2|x|^{7/6}|Re g|), so panels (first length 0.4, growth 1.9) are laid
// only while that exponent is below ~45 (contribution above ~1e-18) and the
// legs are often empty for |x| beyond ~30.
//
// Inside the disk the problem is analyzed through the conformal map f; the
// interior jump rays are f-preimages of the four straight rays at angles
// {0, sigma, pi, -sigma}. The opening angle sigma is fixed by requiring the
// sigma-ray preimage to exit the disk exactly at z0 + delta e^{6pi i/7};
// conformality makes sigma = Arg f(z0 + delta e^{6pi i/7}), and the preimage
// is re-traced explicitly as a verification (and kept for diagnostics).
// build_contour rejects sigma outside (6pi/7 - pi/14, 6pi/7 + pi/14) and
// legs where Re g has the wrong sign ("contour mismatch").
#pragma once

#include <vector>

#include "pi2/asymptotics.hpp"
#include "pi2/rh_cauchy.hpp"

namespace pi2 {

struct ContourSet {
  double x = 0.0;
  double T = 0.0;
  double delta = 1.0;
  double sigma = 0.0;      // Arg f at the upper exit point
  GFunction G;             // phase bundle the contour was built from
  std::vector<Panel> circle;     // clockwise, 14 arcs
  std::vector<Panel> leg_upper;  // ordered far -> near (toward the disk)
  std::vector<Panel> leg_lower;  // ordered far -> near
  std::vector<Panel> leg_right;  // ordered near -> far (away from the disk)
  // Largest |t| reached by any laid leg panel (= delta when all legs are
  // empty); beyond it every jump is identity to ~1e-18.
  double truncation_radius = 0.0;
  // Traced f-preimage of the sigma-ray from z0 out to the disk boundary
  // (last point = the upper exit point to ~1e-12). The lower preimage is
  // its conjugate.
  std::vector<cplx> sigma_preimage;
};

// Assemble the contour for given (x, T). Throws std::domain_error for
// |x| < 10 (the deformation is not validated there) and
// std::runtime_error("contour mismatch") when the sigma window or the
// leg decay signs fail.
ContourSet build_contour(double x, double T, double delta = 1.0);

// Same, from an already-solved phase bundle (x, T taken from it).
ContourSet build_contour(const GFunction& G, double delta = 1.0);

// Trace the f-preimage of the ray arg f = sigma from z0 to |zeta - z0| =
// delta by Newton continuation in the ray radius. Returns points ordered
// outward; the last lies on the disk boundary. Used by build_contour for
// its exit-point verification and exposed for tests and diagnostics.
std::vector<cplx> trace_ray_preimage(const GFunction& G, double sigma,
                                     double delta);

}  // namespace pi2
