#include "pi2/branched_power.hpp"

#include <cmath>
#include <stdexcept>

namespace pi2 {
namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
// Angular half-width within which a point counts as "on the cut".
constexpr double kCutSnap = 1e-13;

std::complex<double> eval_impl(const BranchedPower& p, std::complex<double> z,
                               int side) {
  const std::complex<double> w = z - p.base_point;
  if (w == std::complex<double>(0.0, 0.0)) {
    if (p.exponent > 0.0) return 0.0;
    if (p.exponent == 0.0) return 1.0;
    throw std::domain_error("branched_power_eval: negative power at base");
  }
  // Offset angle relative to the cut, wrapped into (-2pi, 0].
  double r = std::fmod(std::arg(w) - p.cut_direction, kTwoPi);
  if (r > 0.0) r -= kTwoPi;
  const bool on_cut = (r > -kCutSnap) || (r < -kTwoPi + kCutSnap);
  if (on_cut) {
    if (side == 0) throw std::domain_error("on branch cut");
    r = (side > 0) ? 0.0 : -kTwoPi;
  }
  const double theta = p.cut_direction + r;
  const double lw = std::log(std::abs(w));
  return std::exp(p.exponent * std::complex<double>(lw, theta));
}

}  // namespace

std::complex<double> branched_power_eval(const BranchedPower& p,
                                         std::complex<double> z) {
  return eval_impl(p, z, 0);
}

std::complex<double> branched_power_eval(const BranchedPower& p,
                                         std::complex<double> z, int side) {
  return eval_impl(p, z, side);
}

}  // namespace pi2
