#pragma once

#include <cmath>

namespace contactqm::detail {

// Regular interior solution psi = sin(p x) (sinh for p^2 < 0) and its
// derivative at x = L; only the ratio matters for matching.
struct InnerWave {
  double value;
  double deriv;
};

inline InnerWave inner_wave(double p2, double L) {
  if (p2 > 0) {
    const double p = std::sqrt(p2);
    return {std::sin(p * L), p * std::cos(p * L)};
  }
  if (p2 < 0) {
    const double r = std::sqrt(-p2);
    return {std::sinh(r * L), r * std::cosh(r * L)};
  }
  return {L, 1.0};
}

}  // namespace contactqm::detail
