#pragma once

#include <span>
#include <vector>

#include "contactqm/freeparticle.hpp"
#include "contactqm/numerics.hpp"

namespace contactqm::timedelay {

// Gamma keeps the sign of a0, so the Lorentzian is negative for a0 > 0.
struct ResonanceParams {
  double E_r;
  double Gamma;
};

struct DelaySample {
  double E;
  double tau;
};

// Shift `value` by multiples of `period` to land nearest `reference`.
double unwrap_nearest(double value, double reference, double period);
std::vector<double> unwrap_phase(std::span<const double> phases, double period);

// tau = 2 d(delta)/dE by a five-point stencil. Stencil samples are unwrapped
// modulo pi against the centre value.
double wigner_delay(const numerics::RealFunction& phase, double E, double h = 0.0);
std::vector<DelaySample> delay_curve(const numerics::RealFunction& phase, std::span<const double> energies);

ResonanceParams resonance_params(const freeparticle::Effective& eff, double m);
double lorentzian_delay(double E, const ResonanceParams& res);
// delta(E) = arctan((Gamma/2) / (E - E_r)), continued through E_r.
double breit_wigner_phase(double E, const ResonanceParams& res);

// Classical round-trip time to x0 and back in the Coulomb tail; add tau for the total.
double coulomb_tof(double x0, double k, double kappa, double m);

}  // namespace contactqm::timedelay
