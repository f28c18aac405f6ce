#include "pi2/airy.hpp"

#include <cmath>
#include <stdexcept>

#include "pi2/gammaf.hpp"

namespace pi2 {
namespace {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Compensated (double-double) arithmetic: an unevaluated sum hi + lo with
// |lo| <= ulp(hi)/2, giving ~32 significant decimal digits. Only the
// operations the Maclaurin series needs are implemented.
// ---------------------------------------------------------------------------

struct DD {
  double hi = 0.0, lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {
  // Requires |a| >= |b|.
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  const DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul(const DD& a, const DD& b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div_double(const DD& a, double b) {
  const double q1 = a.hi / b;
  const DD p = two_prod(q1, b);
  const double q2 = ((a.hi - p.hi) - p.lo + a.lo) / b;
  return quick_two_sum(q1, q2);
}

struct CDD {
  DD re, im;
};

inline CDD cdd_from(cplx z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }

inline CDD cdd_add(const CDD& a, const CDD& b) {
  return {dd_add(a.re, b.re), dd_add(a.im, b.im)};
}

inline CDD cdd_mul(const CDD& a, const CDD& b) {
  const DD rr = dd_mul(a.re, b.re);
  const DD ii = dd_mul(a.im, b.im);
  const DD ri = dd_mul(a.re, b.im);
  const DD ir = dd_mul(a.im, b.re);
  return {dd_add(rr, DD{-ii.hi, -ii.lo}), dd_add(ri, ir)};
}

inline CDD cdd_div_double(const CDD& a, double b) {
  return {dd_div_double(a.re, b), dd_div_double(a.im, b)};
}

inline cplx cdd_value(const CDD& a) {
  return {a.re.hi + a.re.lo, a.im.hi + a.im.lo};
}

inline double cdd_mag(const CDD& a) {
  return std::abs(a.re.hi) + std::abs(a.im.hi);
}

// Ai(0) and Ai'(0) = 3^{-2/3}/Gamma(2/3) and -3^{-1/3}/Gamma(1/3), carried
// to double-double so the series seeds do not cap the attainable accuracy.
constexpr DD kAi0 = {0.3550280538878172, 2.05233632436212e-17};
constexpr DD kAip0 = {-0.2588194037928068, 2.522243111610832e-17};

// ---------------------------------------------------------------------------
// Maclaurin branch. With f = sum z^{3k} prod-recurrence etc.:
//   Ai (z) = Ai(0) f(z) + Ai'(0) g(z)
//   Ai'(z) = Ai(0) f'(z) + Ai'(0) g'(z)
// term ratios: f: z^3/((3k+2)(3k+3)); g: z^3/((3k+3)(3k+4));
//              f': z^3/((3k+3)(3k+5)); g': z^3/((3k+1)(3k+3)).
// ---------------------------------------------------------------------------

AiryValue airy_series(cplx z) {
  const CDD z3 = cdd_mul(cdd_from(z), cdd_mul(cdd_from(z), cdd_from(z)));
  CDD tf = cdd_from(1.0);
  CDD tg = cdd_from(z);
  CDD tfp = cdd_div_double(cdd_mul(cdd_from(z), cdd_from(z)), 2.0);
  CDD tgp = cdd_from(1.0);
  CDD f = tf, g = tg, fp = tfp, gp = tgp;
  for (int k = 0; k < 400; ++k) {
    tf = cdd_div_double(cdd_mul(tf, z3), double(3 * k + 2) * (3 * k + 3));
    tg = cdd_div_double(cdd_mul(tg, z3), double(3 * k + 3) * (3 * k + 4));
    tfp = cdd_div_double(cdd_mul(tfp, z3), double(3 * k + 3) * (3 * k + 5));
    tgp = cdd_div_double(cdd_mul(tgp, z3), double(3 * k + 1) * (3 * k + 3));
    f = cdd_add(f, tf);
    g = cdd_add(g, tg);
    fp = cdd_add(fp, tfp);
    gp = cdd_add(gp, tgp);
    const double tmag = cdd_mag(tf) + cdd_mag(tg) + cdd_mag(tfp) + cdd_mag(tgp);
    const double smag = cdd_mag(f) + cdd_mag(g) + cdd_mag(fp) + cdd_mag(gp);
    if (tmag <= 1e-38 * smag && k > 3) break;
  }
  const CDD a0 = {kAi0, DD{0.0, 0.0}};
  const CDD a1 = {kAip0, DD{0.0, 0.0}};
  AiryValue out;
  out.ai = cdd_value(cdd_add(cdd_mul(a0, f), cdd_mul(a1, g)));
  out.aip = cdd_value(cdd_add(cdd_mul(a0, fp), cdd_mul(a1, gp)));
  out.expo = 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Asymptotic branch, valid |arg z| <= 2pi/3:
//   Ai (z) ~  e^{-xi}/(2 sqrt(pi) z^{1/4}) * sum (-1)^k u_k xi^{-k}
//   Ai'(z) ~ -z^{1/4} e^{-xi}/(2 sqrt(pi)) * sum (-1)^k v_k xi^{-k}
// xi = (2/3) z^{3/2}, u_0 = v_0 = 1,
// u_k = u_{k-1} (6k-5)(6k-3)(6k-1)/((2k-1) 216 k), v_k = -((6k+1)/(1-6k))...
// i.e. v_k = ((6k+1)/(1-6k)) u_k. Truncated at the first non-decreasing
// term (optimal-truncation error ~ e^{-2|xi|}).
// ---------------------------------------------------------------------------

AiryValue airy_asymptotic(cplx z, int max_terms) {
  const cplx z12 = std::sqrt(z);          // principal; |arg z| <= 2pi/3 here
  const cplx z14 = std::sqrt(z12);
  const cplx xi = (2.0 / 3.0) * z12 * z;
  // sum (-1)^k u_k xi^{-k} and the v-series, term-recursive.
  cplx s_ai = 1.0, s_aip = 1.0;
  cplx term = 1.0;
  double u = 1.0;
  double prev_mag = 1e300;
  for (int k = 1; k <= max_terms; ++k) {
    const double num = (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0);
    const double den = (2.0 * k - 1.0) * 216.0 * k;
    u *= num / den;
    term *= -1.0 / xi;
    const cplx tu = term * u;
    const double mag = std::abs(tu);
    if (mag >= prev_mag) break;  // divergent tail reached
    prev_mag = mag;
    s_ai += tu;
    s_aip += tu * ((6.0 * k + 1.0) / (1.0 - 6.0 * k));
    if (mag <= 1e-18 * std::abs(s_ai)) break;
  }
  const double c = 0.5 / std::sqrt(M_PI);
  AiryValue out;
  out.ai = c * s_ai / z14;
  out.aip = -c * z14 * s_aip;
  out.expo = -xi;
  return out;
}

constexpr double kTwoPiOver3 = 2.0943951023931954923;

AiryValue airy_dispatch(cplx z, const AiryParams& prm) {
  if (std::abs(z) < prm.series_radius) return airy_series(z);
  if (std::abs(std::arg(z)) <= kTwoPiOver3)
    return airy_asymptotic(z, prm.max_asym_terms);
  // Connection onto the two rotated arguments, both inside |arg| <= 2pi/3:
  //   Ai (z) = -w Ai (wz) - w^2 Ai (w^2 z)
  //   Ai'(z) = -w^2 Ai'(wz) - w Ai'(w^2 z),  w = e^{2 pi i/3}.
  const cplx w(-0.5, 0.86602540378443864676);
  const cplx w2(-0.5, -0.86602540378443864676);
  const AiryValue a1 = airy_asymptotic(w * z, prm.max_asym_terms);
  const AiryValue a2 = airy_asymptotic(w2 * z, prm.max_asym_terms);
  AiryValue out;
  out.expo = (a1.expo.real() >= a2.expo.real()) ? a1.expo : a2.expo;
  const cplx e1 = std::exp(a1.expo - out.expo);
  const cplx e2 = std::exp(a2.expo - out.expo);
  out.ai = -w * a1.ai * e1 - w2 * a2.ai * e2;
  out.aip = -w2 * a1.aip * e1 - w * a2.aip * e2;
  return out;
}

}  // namespace

AiryValue airy_eval_scaled(cplx z, const AiryParams& prm) {
  AiryValue v = airy_dispatch(z, prm);
  v.scaled = true;
  return v;
}

AiryValue airy_eval_scaled(cplx z) { return airy_eval_scaled(z, AiryParams{}); }

AiryValue airy_eval(cplx z) {
  AiryValue v = airy_dispatch(z, AiryParams{});
  // Fold the exponent back in when representable (|Re expo| ~< 700 keeps the
  // product inside double range together with the O(1) scaled parts).
  if (std::abs(v.expo.real()) < 650.0) {
    const cplx e = std::exp(v.expo);
    v.ai *= e;
    v.aip *= e;
    v.expo = 0.0;
    v.scaled = false;
  } else {
    v.scaled = true;
  }
  return v;
}

AiryCoeffs airy_coeffs(int k) {
  if (k < 1) throw std::domain_error("airy_coeffs: requires k >= 1");
  const double lg = log_gamma_fn(3.0 * k + 0.5) - k * std::log(36.0) -
                    log_gamma_fn(double(k) + 1.0) - log_gamma_fn(k + 0.5);
  const double s = std::exp(lg);
  return {k, s, -((6.0 * k + 1.0) / (6.0 * k - 1.0)) * s};
}

}  // namespace pi2
