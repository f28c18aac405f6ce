// Real roots of a real cubic.
//
// Classification by discriminant, closed-form (Cardano / trigonometric)
// roots, then two Newton polish steps per root so residuals reach
// ~1e-15 * scale even near the discriminant zero where the closed forms
// lose digits.
#pragma once

#include <vector>

namespace pi2 {

// Real roots of a3 x^3 + a2 x^2 + a1 x + a0, ascending, complex pair omitted.
// A double root is reported once (the caller sees 1 or 3 entries for a true
// cubic, 2 at a discriminant zero). Throws std::invalid_argument("not a
// cubic") when a3 == 0.
std::vector<double> cubic_real_roots(double a3, double a2, double a1,
                                     double a0);

}  // namespace pi2
