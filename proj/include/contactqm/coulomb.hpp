#pragma once

#include <utility>
#include <vector>

#include "contactqm/numerics.hpp"
#include "contactqm/specfun.hpp"

// Attractive or repulsive 1/x interaction V = kappa / (m x) on x > 0.
namespace contactqm::coulomb {

using specfun::ComplexVal;

struct System {
  double kappa;
  double m = 1.0;
};

// Step-regulated model: V = kappa / (m L) for x < L.
struct UV {
  System system;
  double L;
};

// chi(q^2) = c0 + c2 q^2 at reference length b0.
struct Effective {
  double b0;
  double c0;
  double c2;

  double chi(double q2) const { return c0 + c2 * q2; }
};

struct DefectExpansion {
  double delta0;
  double delta2;
};

struct WaveValue {
  ComplexVal psi;
  ComplexVal dpsi;
};

double standard_b0(const System& s);

// Same physics at a different reference length: c0 -> c0 - 2 kappa ln(b0'/b0).
Effective with_b0(const Effective& eff, const System& s, double new_b0);

double boundary_Z(const Effective& eff, const System& s, double q, double xb);

// Digamma quantization residual in the xb-free form.
double quantization_residual(const Effective& eff, const System& s, double q);

// Same condition written at a finite boundary xb with the running Z(xb).
double running_residual(const Effective& eff, const System& s, double q, double xb);

DefectExpansion defect_expansion(const System& s, const Effective& eff);
double effective_bound_q_ritz(const System& s, const Effective& eff, int n_tilde);
double effective_bound_q_exact(const System& s, const Effective& eff, numerics::Bracket bracket);
// Root attached to the digamma pole at nu = n_tilde.
double effective_bound_q_exact(const System& s, const Effective& eff, int n_tilde);
// Root of the running-Z condition at boundary xb, attached to nu = n_tilde.
double running_bound_q(const System& s, const Effective& eff, int n_tilde, double xb);
double canonical_bound_q(const System& s, int n);

ComplexVal effective_phase_factor(const System& s, const Effective& eff, double k);

// Decaying exterior solution e^{-qx} x U(1 + kappa/q, 2, 2 q x).
WaveValue exterior_bound_wave(const System& s, double q, double x);
// Incoming and regular-combination exterior scattering solutions.
WaveValue incoming_wave(const System& s, double k, double x);
WaveValue outgoing_wave(const System& s, double k, double x);

// psi_out'(L) psi_in(L) - psi_out(L) psi_in'(L).
double uv_matching(const UV& uv, double q);
double uv_bound_q(const UV& uv, numerics::Bracket bracket);
// Lowest `count` states, deepest first (n = 1, 2, ...).
std::vector<double> uv_bound_tower(const UV& uv, int count);
ComplexVal uv_phase_factor(const UV& uv, double k);

Effective match_effective(const UV& uv);

}  // namespace contactqm::coulomb
