#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "contactqm/numerics.hpp"

// Free-particle modes in a box [x_b, D] with a mode-dependent Robin condition
// psi + Z psi' = 0 at x_b and psi(D) = 0.
namespace contactqm::consistency {

using Complex = std::complex<double>;
using ChiFunction = std::function<double(double k2)>;

struct BoxConfig {
  double x_b;
  double D;
  double m = 1.0;

  static BoxConfig with_default_wall(double x_b, double m = 1.0) { return {x_b, 400 * x_b, m}; }
  double length() const { return D - x_b; }
};

// psi(x) = norm * sin(k (D - x)), unit norm on [x_b, D].
struct BoxMode {
  double k;
  double E;
  double Z;
  double phase;  // k (D - x_b)
  double norm;

  double psi(double x, const BoxConfig& box) const;
  double dpsi(double x, const BoxConfig& box) const;
};

struct Superposition {
  std::vector<std::pair<std::size_t, Complex>> coefficients;
};

std::vector<BoxMode> solve_box_modes(const ChiFunction& chi, const BoxConfig& box, int count);

// <H Phi_i, Phi_j> - <Phi_i, H Phi_j> from the boundary term.
Complex hermiticity_defect(const BoxMode& i, const BoxMode& j, double t, const BoxConfig& box);
Complex hermiticity_defect_quadrature(const BoxMode& i, const BoxMode& j, double t, const BoxConfig& box);

Complex overlap(const BoxMode& i, const BoxMode& j, double t, const BoxConfig& box);
Complex overlap_quadrature(const BoxMode& i, const BoxMode& j, double t, const BoxConfig& box);

// Drift of a two-mode superposition: rho (Z_i - Z_j) cos(dE t + theta).
struct DriftParams {
  double rho;
  double theta;
  double dZ;
  double omega;
};

DriftParams drift_parameters(const Superposition& s, std::span<const BoxMode> modes, const BoxConfig& box);
double norm_drift_rate(const Superposition& s, std::span<const BoxMode> modes, double t, const BoxConfig& box);
// <Upsilon, Upsilon>(t) by direct quadrature of the mode overlaps.
double norm_quadrature(const Superposition& s, std::span<const BoxMode> modes, double t, const BoxConfig& box);

double time_average(const numerics::RealFunction& f, double T, double t0 = 0.0, double tol = 1e-14);

}  // namespace contactqm::consistency
