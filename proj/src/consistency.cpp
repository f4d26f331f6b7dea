#include "contactqm/consistency.hpp"

#include <cmath>
#include <numbers>

#include "contactqm/error.hpp"

namespace contactqm::consistency {

namespace {

using std::numbers::pi;

void check(const BoxConfig& box) {
  if (!(box.x_b > 0) || !(box.D > box.x_b) || !(box.m > 0))
    throw Error(ErrorCode::InvalidArgument, "box needs 0 < x_b < D and m > 0");
}

double quad_overlap(const BoxMode& a, const BoxMode& b, const BoxConfig& box) {
  const numerics::RealFunction f = [&](double x) { return a.psi(x, box) * b.psi(x, box); };
  // Split into pieces of about one wavelength so each GK panel is smooth.
  const double kmax = std::max(a.k, b.k);
  const int pieces = std::max(1, static_cast<int>(std::ceil(box.length() * kmax / pi)));
  double sum = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = box.x_b + box.length() * i / pieces;
    const double hi = i + 1 == pieces ? box.D : box.x_b + box.length() * (i + 1) / pieces;
    sum += numerics::quad_adaptive(f, lo, hi, 1e-16);
  }
  return sum;
}

}  // namespace

double BoxMode::psi(double x, const BoxConfig& box) const { return norm * std::sin(k * (box.D - x)); }

double BoxMode::dpsi(double x, const BoxConfig& box) const { return -norm * k * std::cos(k * (box.D - x)); }

std::vector<BoxMode> solve_box_modes(const ChiFunction& chi, const BoxConfig& box, int count) {
  check(box);
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "count must be at least 2");
  const double l = box.length();
  // sin(k l) - Z k cos(k l) = 0 is the Robin condition for sin(k (D - x)).
  const auto robin = [&](double k) { return std::sin(k * l) - chi(k * k) * k * std::cos(k * l); };
  std::vector<BoxMode> modes;
  const double dk = pi / l;
  double k_lo = 1e-6 * dk;
  while (static_cast<int>(modes.size()) < count) {
    if (k_lo > 1e4 * dk * (count + 1)) throw Error(ErrorCode::RootScanExhausted, "too few box modes found");
    const double k_hi = k_lo + dk * (count + 2);
    for (double k : numerics::scan_roots(robin, k_lo, k_hi, 16 * (count + 2))) {
      if (static_cast<int>(modes.size()) == count) break;
      if (!modes.empty() && k <= modes.back().k * (1 + 1e-12)) continue;
      const double s2 = std::sin(2 * k * l);
      const double n2 = l / 2 - s2 / (4 * k);
      modes.push_back({k, k * k / (2 * box.m), chi(k * k), k * l, 1 / std::sqrt(n2)});
    }
    k_lo = k_hi;
  }
  return modes;
}

Complex hermiticity_defect(const BoxMode& i, const BoxMode& j, double t, const BoxConfig& box) {
  const double di = i.dpsi(box.x_b, box), dj = j.dpsi(box.x_b, box);
  return (i.Z - j.Z) * di * dj / (2 * box.m) * std::exp(Complex(0.0, (i.E - j.E) * t));
}

Complex hermiticity_defect_quadrature(const BoxMode& i, const BoxMode& j, double t, const BoxConfig& box) {
  // H psi = E psi in the interior, so the bulk integrand is (E_i - E_j) psi_i psi_j.
  return (i.E - j.E) * quad_overlap(i, j, box) * std::exp(Complex(0.0, (i.E - j.E) * t));
}

Complex overlap(const BoxMode& i, const BoxMode& j, double t, const BoxConfig& box) {
  if (i.E == j.E) throw Error(ErrorCode::DegenerateEnergies, "E_i = E_j");
  return hermiticity_defect(i, j, t, box) / (i.E - j.E);
}

Complex overlap_quadrature(const BoxMode& i, const BoxMode& j, double t, const BoxConfig& box) {
  return quad_overlap(i, j, box) * std::exp(Complex(0.0, (i.E - j.E) * t));
}

DriftParams drift_parameters(const Superposition& s, std::span<const BoxMode> modes, const BoxConfig& box) {
  if (s.coefficients.size() != 2) throw Error(ErrorCode::InvalidArgument, "drift needs a two-mode superposition");
  const auto& [ii, ci] = s.coefficients[0];
  const auto& [jj, cj] = s.coefficients[1];
  if (ii >= modes.size() || jj >= modes.size()) throw Error(ErrorCode::InvalidArgument, "mode index out of range");
  const BoxMode& a = modes[ii];
  const BoxMode& b = modes[jj];
  const Complex w = std::conj(ci) * cj * Complex(0.0, 1.0 / box.m) * a.dpsi(box.x_b, box) * b.dpsi(box.x_b, box);
  return {std::abs(w), std::arg(w), a.Z - b.Z, a.E - b.E};
}

double norm_drift_rate(const Superposition& s, std::span<const BoxMode> modes, double t, const BoxConfig& box) {
  const DriftParams p = drift_parameters(s, modes, box);
  return p.rho * p.dZ * std::cos(p.omega * t + p.theta);
}

double norm_quadrature(const Superposition& s, std::span<const BoxMode> modes, double t, const BoxConfig& box) {
  Complex total = 0.0;
  for (const auto& [a, ca] : s.coefficients) {
    for (const auto& [b, cb] : s.coefficients) {
      if (a >= modes.size() || b >= modes.size()) throw Error(ErrorCode::InvalidArgument, "mode index out of range");
      const BoxMode& ma = modes[a];
      const BoxMode& mb = modes[b];
      const double ov = quad_overlap(ma, mb, box);
      total += std::conj(ca) * cb * ov * std::exp(Complex(0.0, (ma.E - mb.E) * t));
    }
  }
  return total.real();
}

double time_average(const numerics::RealFunction& f, double T, double t0, double tol) {
  if (!(T > 0)) throw Error(ErrorCode::InvalidArgument, "averaging time must be positive");
  return numerics::quad_adaptive(f, t0 - T / 2, t0 + T / 2, tol * T) / T;
}

}  // namespace contactqm::consistency
