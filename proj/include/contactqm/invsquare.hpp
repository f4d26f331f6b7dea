#pragma once

#include "contactqm/numerics.hpp"
#include "contactqm/specfun.hpp"

// Attractive inverse-square interaction V = -a / x^2 with alpha = 2 m a > 1/4.
namespace contactqm::invsquare {

using specfun::ComplexVal;

class System {
 public:
  static System from_alpha(double alpha, double m = 1.0);

  double alpha() const { return alpha_; }
  double m() const { return m_; }
  double g() const { return g_; }

 private:
  System(double alpha, double m, double g) : alpha_(alpha), m_(m), g_(g) {}
  double alpha_;
  double m_;
  double g_;
};

// Capped model: V = -a / L^2 for x < L.
struct UV {
  System system;
  double L;
};

// chi(q^2) = c2 q^2; the constant term is absorbed into b0.
struct Effective {
  double b0;
  double c2;
};

struct UVConstants {
  double A, B, C, D;
  double f_alpha;
  double arctan_CA;  // branch continuous in alpha from alpha -> 1/4
};

struct WindowedMomentum {
  double q;
  bool in_window;  // q * validity_length < window
};

inline constexpr double kValidityWindow = 0.3;

double arg_gamma_minus_ig(double g);

UVConstants uv_constants(const System& s);

// Z/xb from the RG solution with integration constant b.
double running_Zt(double b, const System& s, double xb);
// dZt/dxb demanded by xb-independence of the quantization condition.
double rg_flow_rhs(const System& s, double Zt, double xb);
// cos of the quantization phase; zero at bound states.
double quantization_residual(const System& s, double q, double xb, double Zt);
// Root of the running-boundary condition nearest the NLO estimate for level n.
double running_bound_q(const Effective& eff, const System& s, int n, double xb);

double lo_bound_q_value(const Effective& eff, const System& s, int n);
WindowedMomentum lo_bound_q(const Effective& eff, const System& s, int n, double validity_length = 0.0);
double nlo_bound_q(const Effective& eff, const System& s, int n);

ComplexVal lo_phase_factor(double b, const System& s, double k);
ComplexVal nlo_phase_factor(const Effective& eff, const System& s, double k);

// psi_out'(L) psi_in(L) - psi_out(L) psi_in'(L) with psi_out = sqrt(x) K_ig(q x).
double uv_matching(const UV& uv, double q);
double uv_bound_q_exact(const UV& uv, numerics::Bracket bracket);
double uv_bound_q_exact(const UV& uv, int n);
double uv_bound_q_leading(const UV& uv, int n);
double uv_bound_q_perturbative(const UV& uv, int n);
// Largest level index with q^(0) L below the validity window.
int uv_top_level(const UV& uv, double window = kValidityWindow);
ComplexVal uv_phase_factor(const UV& uv, double k);

Effective match_effective(const UV& uv);

}  // namespace contactqm::invsquare
