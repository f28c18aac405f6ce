#include "pi2/rh_model.hpp"

#include <cmath>
#include <stdexcept>

#include "pi2/airy.hpp"

namespace pi2 {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Angular window treated as "on a ray"; matches the branched-power cut
// window so side-limit semantics agree across the project.
constexpr double kOnRayTol = 1e-13;

cplx unit(double a) { return {std::cos(a), std::sin(a)}; }

enum class Sector { kI, kII, kIII, kIV };

// A point in polar form with the sector resolved. theta is kept separately
// from w so that the two sides of the arg = pi ray (where the half- and
// quarter-power branches differ) stay distinguished.
struct SectorPoint {
  Sector sector;
  double r;
  double theta;
};

SectorPoint classify(cplx w, double sigma, int side) {
  const double r = std::abs(w);
  if (r == 0.0)
    throw std::domain_error("model argument at the ray intersection point");
  const double th = std::arg(w);

  const bool g1 = std::abs(th) <= kOnRayTol;
  const bool g2 = std::abs(th - sigma) <= kOnRayTol;
  const bool g3 = kPi - std::abs(th) <= kOnRayTol;
  const bool g4 = std::abs(th + sigma) <= kOnRayTol;
  if (g1 || g2 || g3 || g4) {
    if (side == 0)
      throw std::domain_error(
          "model argument on a jump ray: side must be specified");
    if (g1) return {side > 0 ? Sector::kI : Sector::kIV, r, 0.0};
    if (g2) return {side > 0 ? Sector::kI : Sector::kII, r, sigma};
    if (g3) return {side > 0 ? Sector::kII : Sector::kIII, r,
                    side > 0 ? kPi : -kPi};
    return {side > 0 ? Sector::kIII : Sector::kIV, r, -sigma};
  }
  if (th > 0.0 && th < sigma) return {Sector::kI, r, th};
  if (th >= sigma) return {Sector::kII, r, th};
  if (th <= -sigma) return {Sector::kIII, r, th};
  return {Sector::kIV, r, th};
}

// Column c: sqrt(2 pi) e^{i phase} (Ai(om^k w), om^k Ai'(om^k w)) e^{unwind}.
// The scaled Airy exponent and the unwind cancel analytically on the
// asymptotic branch (their sum is a rounding residue), so the fold is
// overflow-free at any |w|.
void put_column(Mat2C& m, int c, cplx w, int k, double phase, cplx unwind) {
  static const double kSqrt2Pi = std::sqrt(2.0 * kPi);
  cplx omk = 1.0;
  for (int i = 0; i < k; ++i) omk *= unit(2.0 * kPi / 3.0);
  const AiryValue av = airy_eval_scaled(omk * w);
  const cplx scale = kSqrt2Pi * unit(phase) * std::exp(av.expo + unwind);
  m(0, c) = scale * av.ai;
  m(1, c) = scale * omk * av.aip;
}

Mat2C airy_columns(const SectorPoint& sp, cplx w) {
  const cplx phi = (2.0 / 3.0) * std::pow(sp.r, 1.5) * unit(1.5 * sp.theta);
  int k0 = 0, k1 = 0;
  double a0 = 0.0, a1 = 0.0;
  switch (sp.sector) {
    case Sector::kI:
      k0 = 0, a0 = -kPi / 4.0, k1 = 2, a1 = kPi / 12.0;
      break;
    case Sector::kII:
      k0 = 1, a0 = -7.0 * kPi / 12.0, k1 = 2, a1 = kPi / 12.0;
      break;
    case Sector::kIII:
      k0 = 2, a0 = kPi / 12.0, k1 = 1, a1 = 5.0 * kPi / 12.0;
      break;
    case Sector::kIV:
      k0 = 0, a0 = -kPi / 4.0, k1 = 1, a1 = 5.0 * kPi / 12.0;
      break;
  }
  Mat2C m;
  put_column(m, 0, w, k0, a0, +phi);
  put_column(m, 1, w, k1, a1, -phi);
  return m;
}

// B_k of the large-w series: the (2,1) / (1,2) / diagonal cycle.
Mat2C series_coefficient(int k) {
  const int j = (k + 2) / 3;
  switch (k % 3) {
    case 1:
      return mat2(0.0, 0.0, airy_coeffs(2 * j - 1).t_k, 0.0);
    case 2:
      return mat2(0.0, airy_coeffs(2 * j - 1).s_k, 0.0, 0.0);
    default:
      return mat2(airy_coeffs(2 * j).s_k, 0.0, 0.0, airy_coeffs(2 * j).t_k);
  }
}

Mat2C series_eval(const SectorPoint& sp, int terms, double* first_dropped) {
  const cplx winv = unit(-sp.theta) / sp.r;
  Mat2C s = Mat2C::Identity();
  cplx wk = 1.0;
  for (int k = 1; k <= terms; ++k) {
    wk *= winv;
    s += series_coefficient(k) * wk;
  }
  *first_dropped =
      mat2_norm(series_coefficient(terms + 1)) * std::pow(sp.r, -(terms + 1));
  // w^{-sigma3/4} from the polar form, so the arg = pi side survives.
  const Mat2C quarter =
      exp_sigma3(-0.25 * (std::log(sp.r) + cplx(0.0, sp.theta)));
  return s * quarter * model_N();
}

}  // namespace

Mat2C model_N() {
  static const Mat2C n = mat2(1.0, 1.0, -1.0, 1.0) / std::sqrt(2.0) *
                         exp_sigma3(cplx(0.0, -kPi / 4.0));
  return n;
}

Mat2C airy_model_M(std::complex<double> w, double sigma, int side) {
  return airy_model_M(w, sigma, side, ModelParams{}, nullptr);
}

Mat2C airy_model_M(std::complex<double> w, double sigma, int side,
                   const ModelParams& prm, ModelDiag* diag) {
  if (!(sigma > kPi / 3.0 && sigma < kPi))
    throw std::invalid_argument("model opening angle outside (pi/3, pi)");
  if (prm.series_terms < 1)
    throw std::invalid_argument("model series needs at least one term");
  const SectorPoint sp = classify(w, sigma, side);
  const bool use_series =
      prm.force_path > 0 ||
      (prm.force_path == 0 && sp.r >= prm.series_threshold);
  if (use_series) {
    double dropped = 0.0;
    const Mat2C m = series_eval(sp, prm.series_terms, &dropped);
    if (diag) {
      diag->used_series = true;
      diag->truncation_error = dropped;
    }
    return m;
  }
  if (diag) {
    diag->used_series = false;
    diag->truncation_error = 0.0;
  }
  return airy_columns(sp, w);
}

}  // namespace pi2
