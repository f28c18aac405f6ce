// Real Gamma function (Lanczos approximation).
//
// Needed only for the Airy asymptotic-series coefficient ratios
// s_k = Gamma(3k+1/2) / (36^k k! Gamma(k+1/2)); accuracy target 1e-13
// relative on [0.5, 40]. Lanczos with g = 7, 9 coefficients, plus the
// reflection formula for arguments below 1/2.
#pragma once

namespace pi2 {

// Gamma(x) for real x, poles at 0, -1, -2, ... throw std::domain_error.
double gamma_fn(double x);

// log|Gamma(x)| for x > 0; used to form large-k coefficient ratios without
// overflow.
double log_gamma_fn(double x);

}  // namespace pi2
