#pragma once

#include <cmath>
#include <stdexcept>

namespace mmee {

/// Principal branch W_0 of the Lambert W function: w with w*exp(w) = x,
/// w >= -1, valid for x >= -1/e. Halley iteration from a branch-aware
/// initial guess; converges to ~1e-15 relative residual in a handful of
/// steps over the whole domain.
inline double lambert_w0(double x) {
  constexpr double inv_e = 0.36787944117144232;  // 1/e
  if (x < -inv_e) throw std::domain_error("lambert_w0: x < -1/e");
  if (x == 0.0) return 0.0;

  double w;
  if (x < -inv_e + 1e-4) {
    // Series around the branch point x = -1/e.
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
  } else if (x < 0.5) {
    // Pade-like seed near zero; also serves the negative range.
    w = x * (1.0 - x + 1.5 * x * x) / (1.0 + 0.5 * x);
    if (w <= -1.0) w = -1.0 + 1e-12;
  } else if (x < std::exp(1.0)) {
    const double l = std::log1p(x);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    // Asymptotic seed: W ~ ln x - ln ln x.
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    // Halley step.
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace mmee
