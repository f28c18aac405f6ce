#include "pi2/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pi2 {
namespace {

double eval_monic(double b, double c, double d, double x) {
  return ((x + b) * x + c) * x + d;
}

double eval_monic_d(double b, double c, double x) {
  return (3.0 * x + 2.0 * b) * x + c;
}

void newton_polish(double b, double c, double d, double& x) {
  for (int it = 0; it < 2; ++it) {
    const double f = eval_monic(b, c, d, x);
    const double fp = eval_monic_d(b, c, x);
    if (fp == 0.0) return;
    const double step = f / fp;
    if (!std::isfinite(step)) return;
    x -= step;
  }
}

}  // namespace

std::vector<double> cubic_real_roots(double a3, double a2, double a1,
                                     double a0) {
  if (a3 == 0.0) throw std::invalid_argument("not a cubic");
  // Monic: x^3 + b x^2 + c x + d.
  const double b = a2 / a3, c = a1 / a3, d = a0 / a3;
  // Depressed: t^3 + p t + q, x = t - b/3.
  const double shift = b / 3.0;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  const double scale =
      std::max({1.0, std::abs(p) * std::sqrt(std::abs(p)), std::abs(q)});

  std::vector<double> roots;
  if (std::abs(disc) <= 1e-14 * scale * scale) {
    if (p == 0.0 && q == 0.0) {
      roots = {0.0};
    } else if (p == 0.0) {
      roots = {std::cbrt(-q)};
    } else {
      // Double root and a simple root.
      roots = {-1.5 * q / p, 3.0 * q / p};
    }
  } else if (disc > 0.0) {
    // Three distinct real roots: trigonometric form (p < 0 here).
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0));
  } else {
    // One real root: Cardano with the larger-magnitude cube root first.
    const double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double u3 = (q >= 0.0) ? (-q / 2.0 - s) : (-q / 2.0 + s);
    const double u = std::cbrt(u3);
    const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
    roots = {u + v};
  }

  for (double& t : roots) {
    double x = t - shift;
    newton_polish(b, c, d, x);
    t = x;
  }
  std::sort(roots.begin(), roots.end());
  // Merge numerically coincident roots (double roots polished from both
  // closed-form expressions).
  std::vector<double> out;
  for (double r : roots) {
    if (out.empty() ||
        std::abs(r - out.back()) > 1e-8 * std::max(1.0, std::abs(r)))
      out.push_back(r);
  }
  return out;
}

}  // namespace pi2
