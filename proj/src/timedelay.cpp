#include "contactqm/timedelay.hpp"

#include <cmath>
#include <numbers>

#include "contactqm/error.hpp"

namespace contactqm::timedelay {

using std::numbers::pi;

double unwrap_nearest(double value, double reference, double period) {
  return value + period * std::round((reference - value) / period);
}

std::vector<double> unwrap_phase(std::span<const double> phases, double period) {
  std::vector<double> out(phases.begin(), phases.end());
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = unwrap_nearest(out[i], out[i - 1], period);
  return out;
}

double wigner_delay(const numerics::RealFunction& phase, double E, double h) {
  if (!(E > 0)) throw Error(ErrorCode::DomainViolation, "energy must be positive");
  if (h <= 0) h = numerics::default_step(E);
  if (E - 2 * h <= 0) h = E / 4;
  const double centre = phase(E);
  const numerics::RealFunction unwrapped = [&](double e) { return unwrap_nearest(phase(e), centre, pi); };
  return 2 * numerics::differentiate(unwrapped, E, h);
}

std::vector<DelaySample> delay_curve(const numerics::RealFunction& phase, std::span<const double> energies) {
  std::vector<DelaySample> out;
  out.reserve(energies.size());
  for (double e : energies) out.push_back({e, wigner_delay(phase, e)});
  return out;
}

ResonanceParams resonance_params(const freeparticle::Effective& eff, double m) {
  if (!(m > 0)) throw Error(ErrorCode::InvalidArgument, "mass must be positive");
  if (!(eff.b2 < 0)) throw Error(ErrorCode::NoResonance, "b2 >= 0 has no resonance");
  const double Er = -1 / (2 * m * eff.b2);
  return {Er, std::sqrt(8 * m) * eff.a0 * std::pow(Er, 1.5)};
}

double lorentzian_delay(double E, const ResonanceParams& res) {
  const double d = E - res.E_r, hg = res.Gamma / 2;
  return -res.Gamma / (d * d + hg * hg);
}

double breit_wigner_phase(double E, const ResonanceParams& res) {
  return std::atan2(res.Gamma / 2, E - res.E_r);
}

double coulomb_tof(double x0, double k, double kappa, double m) {
  if (!(k > 0) || !(x0 > 0) || !(m > 0)) throw Error(ErrorCode::InvalidArgument, "x0, k and m must be positive");
  const double v0 = k / m;
  const double r = kappa / (k * k);
  return 2 / v0 * (x0 - r + r * std::log(2 * k * x0));
}

}  // namespace contactqm::timedelay
