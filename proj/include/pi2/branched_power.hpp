// Fractional powers with explicit branch cuts.
//
// Every half-integer/quarter power in this project is carried as a
// BranchedPower value {base point a, exponent p, cut direction c}: the
// function z -> (z-a)^p made single-valued by cutting along the ray
// {a + t e^{ic}, t >= 0}. The offset angle is taken in the window
// (c - 2pi, c], so for c = pi this is the principal branch, positive for
// z - a on the positive real axis.
//
// Points exactly on the cut must be evaluated as side limits:
//   side = +1: limit from offset angles increasing to c (for the principal
//              cut, from the upper half-plane), angle -> c;
//   side = -1: limit from the other side, angle -> c - 2pi.
// The two side values are related by (+side) = (-side) * e^{2 pi i p},
// which is exactly the jump factor the downstream RH relations consume.
#pragma once

#include <complex>

namespace pi2 {

struct BranchedPower {
  std::complex<double> base_point{0.0, 0.0};
  double exponent = 0.5;
  double cut_direction = 3.14159265358979323846;  // default: principal
};

// Value of (z - a)^p off the cut. Throws std::domain_error("on branch cut")
// if z lies on the cut ray and no side was requested.
std::complex<double> branched_power_eval(const BranchedPower& p,
                                         std::complex<double> z);

// Side-limit evaluation; off the cut both sides agree with the plain
// overload (side only disambiguates points within ~1e-13 rad of the cut).
std::complex<double> branched_power_eval(const BranchedPower& p,
                                         std::complex<double> z, int side);

}  // namespace pi2
