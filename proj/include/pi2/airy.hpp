// Airy function Ai and Ai' for complex argument, double-precision contract
// ~1e-12 relative, plus the asymptotic-series coefficient pairs (s_k, t_k).
//
// Method: Maclaurin series in compensated (double-double) arithmetic for
// |z| below the switch radius, asymptotic series in xi = (2/3) z^{3/2} for
// |arg z| <= 2pi/3 beyond it, and the three-ray connection
//   Ai(z) = -w Ai(w z) - w^2 Ai(w^2 z),  w = e^{2 pi i/3},
// to reach the remaining sector. The compensated series is load-bearing:
// near the switch radius the series suffers e^{(4/3)|z|^{3/2}} cancellation
// (~1e17 at |z| = 9.5), so plain double summation cannot meet the contract
// anywhere the asymptotic series is not yet accurate.
//
// Results are returned in scaled form Ai = ai * e^{expo} so that callers
// assembling e^{phase}-normalized matrices can fold exponents analytically
// and never overflow; expo = -(2/3) z^{3/2} on the asymptotic branch and 0
// on the series branch.
#pragma once

#include <complex>

namespace pi2 {

struct AiryParams {
  // |z| at which evaluation switches from the compensated Maclaurin series
  // to the asymptotic series. Tuned by the series-vs-asymptotics agreement
  // test; both branches hold ~1e-13 at the default seam.
  double series_radius = 9.5;
  int max_asym_terms = 40;
};

struct AiryValue {
  std::complex<double> ai, aip;  // Ai and Ai', divided by e^{expo}
  std::complex<double> expo;     // Ai(z) = ai * exp(expo)
  bool scaled = false;           // true iff e^{expo} would over/underflow
};

// Scaled evaluation (expo as described above, never multiplied out).
AiryValue airy_eval_scaled(std::complex<double> z, const AiryParams& prm);
AiryValue airy_eval_scaled(std::complex<double> z);

// Convenience: folds e^{expo} into (ai, aip) when that is representable,
// else returns the scaled form with scaled = true.
AiryValue airy_eval(std::complex<double> z);

struct AiryCoeffs {
  int k;
  double s_k;  // Gamma(3k+1/2) / (36^k k! Gamma(k+1/2))
  double t_k;  // -((6k+1)/(6k-1)) s_k
};

// Coefficients of the large-w parametrix series; k >= 1.
AiryCoeffs airy_coeffs(int k);

}  // namespace pi2
