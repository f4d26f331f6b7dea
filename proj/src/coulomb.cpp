#include "contactqm/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "contactqm/error.hpp"
#include "inner_wave.hpp"

namespace contactqm::coulomb {

namespace {

using specfun::euler_gamma;
using std::numbers::pi;

void require_bound(const System& s) {
  if (!(s.kappa < 0)) throw Error(ErrorCode::PositiveKappa, "bound states need kappa < 0");
  if (!(s.m > 0)) throw Error(ErrorCode::InvalidArgument, "mass must be positive");
}

// Residual of the xb-free condition written in nu = |kappa| / q.
double residual_nu(const System& s, const Effective& eff, double nu) {
  const double q = -s.kappa / nu;
  return quantization_residual(eff, s, q);
}

}  // namespace

double standard_b0(const System& s) {
  require_bound(s);
  return -std::exp(-2 * euler_gamma) / (2 * s.kappa);
}

Effective with_b0(const Effective& eff, const System& s, double new_b0) {
  if (!(new_b0 > 0)) throw Error(ErrorCode::InvalidArgument, "b0 must be positive");
  return {new_b0, eff.c0 - 2 * s.kappa * std::log(new_b0 / eff.b0), eff.c2};
}

double boundary_Z(const Effective& eff, const System& s, double q, double xb) {
  if (!(xb > 0)) throw Error(ErrorCode::InvalidArgument, "xb must be positive");
  const double chi = eff.chi(q * q);
  const double run = 2 * s.kappa * std::log(xb / eff.b0);
  const double den = chi - run;
  if (std::abs(den) <= 1e-13 * (std::abs(chi) + std::abs(run)))
    throw Error(ErrorCode::DivergentZ, "boundary function diverges at this xb");
  return 1.0 / den;
}

double quantization_residual(const Effective& eff, const System& s, double q) {
  if (!(q > 0)) throw Error(ErrorCode::InvalidArgument, "q must be positive");
  const double psi = specfun::digamma(1.0 + s.kappa / q).real();
  return psi + eff.chi(q * q) / (2 * s.kappa) + std::log(2 * q * eff.b0) - q / (2 * s.kappa) +
         2 * euler_gamma;
}

double running_residual(const Effective& eff, const System& s, double q, double xb) {
  const double Z = boundary_Z(eff, s, q, xb);
  const double psi = specfun::digamma(1.0 + s.kappa / q).real();
  return psi + 1.0 / (2 * s.kappa * Z) + std::log(2 * q * xb) - q / (2 * s.kappa) + 2 * euler_gamma;
}

DefectExpansion defect_expansion(const System& s, const Effective& eff_in) {
  require_bound(s);
  const Effective eff = with_b0(eff_in, s, standard_b0(s));
  if (eff.c0 == 0.0) throw Error(ErrorCode::ZeroC0, "c0 = 0");
  const double r = 2 * s.kappa / eff.c0;
  const double den = 1 + (pi * pi / 3) * r * r;
  return {r / den, -r * r * (eff.c2 * s.kappa / 2 - 1.0 / 12) / den};
}

double effective_bound_q_ritz(const System& s, const Effective& eff, int n_tilde) {
  if (n_tilde < 1) throw Error(ErrorCode::InvalidArgument, "n_tilde must be >= 1");
  const DefectExpansion d = defect_expansion(s, eff);
  const double nu0 = n_tilde - d.delta0;
  if (!(nu0 > 0)) throw Error(ErrorCode::NonPositiveNu, "nu <= 0");
  const double nu = nu0 - d.delta2 / (nu0 * nu0);
  if (!(nu > 0)) throw Error(ErrorCode::NonPositiveNu, "nu <= 0");
  return -s.kappa / nu;
}

double effective_bound_q_exact(const System& s, const Effective& eff, numerics::Bracket bracket) {
  require_bound(s);
  return numerics::find_root([&](double q) { return quantization_residual(eff, s, q); }, bracket);
}

namespace {

// Roots sit next to the digamma pole at nu = n; try both sides of it.
double pole_adjacent_root(const std::function<double(double)>& f, int n) {
  const double eps = 4e-16 * n;
  const numerics::Bracket sides[2] = {{n + eps, n + 0.5}, {std::max(n - 0.5, 1e-3), n - eps}};
  for (const auto& b : sides) {
    const double flo = f(b.lo), fhi = f(b.hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo > 0) == (fhi > 0)) continue;
    const double nu = numerics::find_root(f, b);
    if (std::abs(f(nu)) <= std::max(std::abs(flo), std::abs(fhi))) return nu;
  }
  throw Error(ErrorCode::NoSignChange, "no root next to the requested digamma pole");
}

}  // namespace

double effective_bound_q_exact(const System& s, const Effective& eff, int n_tilde) {
  require_bound(s);
  if (n_tilde < 1) throw Error(ErrorCode::InvalidArgument, "n_tilde must be >= 1");
  const double nu = pole_adjacent_root([&](double v) { return residual_nu(s, eff, v); }, n_tilde);
  return -s.kappa / nu;
}

double running_bound_q(const System& s, const Effective& eff, int n_tilde, double xb) {
  require_bound(s);
  if (n_tilde < 1) throw Error(ErrorCode::InvalidArgument, "n_tilde must be >= 1");
  const double nu = pole_adjacent_root(
      [&](double v) { return running_residual(eff, s, -s.kappa / v, xb); }, n_tilde);
  return -s.kappa / nu;
}

double canonical_bound_q(const System& s, int n) {
  require_bound(s);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  return -s.kappa / n;
}

ComplexVal effective_phase_factor(const System& s, const Effective& eff_in, double k) {
  if (!(k > 0)) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (s.kappa == 0.0) throw Error(ErrorCode::InvalidArgument, "kappa must be nonzero");
  // f(k) is written for the standard b0; other conventions are traded into c0.
  const Effective eff = s.kappa < 0 ? with_b0(eff_in, s, standard_b0(s)) : eff_in;
  const ComplexVal I{0.0, 1.0};
  const double kap = s.kappa;
  const double eta = kap / k;
  const double chi = eff.c0 - eff.c2 * k * k;
  const ComplexVal log_term = std::log(ComplexVal(-k / kap, 0.0));
  const ComplexVal den =
      pi * kap - 2.0 * I * kap * log_term - 2.0 * I * kap * specfun::digamma(-I * eta) - I * chi + k;
  if (std::abs(den) == 0.0) throw Error(ErrorCode::PoleInF, "f(k) denominator vanishes");
  const double coth_m1 = 2.0 / std::expm1(2 * pi * eta);
  const ComplexVal f = 2 * pi * kap * coth_m1 / den;
  if (std::abs(1.0 + f) == 0.0) throw Error(ErrorCode::PoleInF, "1 + f(k) vanishes");
  const ComplexVal ratio = std::exp(specfun::log_gamma(1.0 + I * eta) - specfun::log_gamma(1.0 - I * eta));
  return ratio / (1.0 + f);
}

WaveValue exterior_bound_wave(const System& s, double q, double x) {
  if (!(q > 0) || !(x > 0)) throw Error(ErrorCode::InvalidArgument, "q and x must be positive");
  double ar = 1.0 + s.kappa / q;
  // At a = 0, -1, ... U degenerates to a polynomial the series cannot reach;
  // a relative nudge of 1e-15 is invisible in the result.
  if (ar <= 0 && ar == std::floor(ar)) ar += 1e-15 * std::max(1.0, -ar);
  const ComplexVal a = ar;
  const ComplexVal z = 2 * q * x;
  const ComplexVal u = specfun::kummer_u_b2(a, z);
  const ComplexVal du = -a * specfun::kummer_u_int(a + 1.0, 2, z);
  const double e = std::exp(-q * x);
  return {e * x * u, e * ((1 - q * x) * u + 2 * q * x * du)};
}

WaveValue incoming_wave(const System& s, double k, double x) {
  if (!(k > 0) || !(x > 0)) throw Error(ErrorCode::InvalidArgument, "k and x must be positive");
  const ComplexVal I{0.0, 1.0};
  const double eta = s.kappa / k;
  const ComplexVal a = 1.0 - I * eta;
  const ComplexVal z = 2.0 * I * k * x;
  // U = S / Gamma(a); the large factors e^{pi eta/2} and 1/Gamma(a) are combined in logs.
  const ComplexVal u = specfun::kummer_u_int_scaled(a, 1, z);
  const ComplexVal du = -specfun::kummer_u_int_scaled(a + 1.0, 2, z);
  const ComplexVal e = std::exp(pi * eta / 2 - specfun::log_gamma(a) - I * k * x);
  return {e * x * u, e * ((1.0 - I * k * x) * u + 2.0 * I * k * x * du)};
}

WaveValue outgoing_wave(const System& s, double k, double x) {
  if (!(k > 0) || !(x > 0)) throw Error(ErrorCode::InvalidArgument, "k and x must be positive");
  const ComplexVal I{0.0, 1.0};
  const double eta = s.kappa / k;
  const ComplexVal a = 1.0 - I * eta;
  const ComplexVal z = 2.0 * I * k * x;
  const ComplexVal wm = std::exp(specfun::log_gamma(a) - pi * eta / 2);
  const ComplexVal wu = std::exp(pi * eta / 2 - specfun::log_gamma(1.0 + I * eta));
  const ComplexVal m = specfun::kummer_m(a, 2.0, z);
  const ComplexVal dm = a / 2.0 * specfun::kummer_m(a + 1.0, 3.0, z);
  const ComplexVal u = specfun::kummer_u_int_scaled(a, 1, z);
  const ComplexVal du = -specfun::kummer_u_int_scaled(a + 1.0, 2, z);
  const ComplexVal w = wm * m + wu * u;
  const ComplexVal dw = wm * dm + wu * du;
  const ComplexVal e = std::exp(-I * k * x);
  return {e * x * w, e * ((1.0 - I * k * x) * w + 2.0 * I * k * x * dw)};
}

double uv_matching(const UV& uv, double q) {
  require_bound(uv.system);
  const double p2 = -2 * uv.system.kappa / uv.L - q * q;
  if (!(p2 > 0)) throw Error(ErrorCode::DomainViolation, "interior momentum is not real");
  const WaveValue out = exterior_bound_wave(uv.system, q, uv.L);
  const detail::InnerWave in = detail::inner_wave(p2, uv.L);
  return out.dpsi.real() * in.value - out.psi.real() * in.deriv;
}

double uv_bound_q(const UV& uv, numerics::Bracket bracket) {
  return numerics::find_root([&](double q) { return uv_matching(uv, q); }, bracket);
}

std::vector<double> uv_bound_tower(const UV& uv, int count) {
  require_bound(uv.system);
  if (count < 1) return {};
  const double k = -uv.system.kappa;
  // Scan in nu = |kappa|/q where the roots are roughly evenly spaced.
  const auto f = [&](double nu) { return uv_matching(uv, k / nu); };
  const double nu_lo = std::max(0.5, 1.001 * k / std::sqrt(-2 * uv.system.kappa / uv.L));
  const auto roots = numerics::scan_roots(f, nu_lo, count + 0.5, 64 * (count + 1));
  if (static_cast<int>(roots.size()) < count)
    throw Error(ErrorCode::NoSignChange, "UV tower scan found too few states");
  std::vector<double> qs;
  for (int i = 0; i < count; ++i) qs.push_back(k / roots[i]);
  return qs;
}

ComplexVal uv_phase_factor(const UV& uv, double k) {
  if (!(k > 0)) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  const double p2 = -2 * uv.system.kappa / uv.L + k * k;
  const detail::InnerWave in = detail::inner_wave(p2, uv.L);
  const WaveValue fl = incoming_wave(uv.system, k, uv.L);
  const WaveValue fr = outgoing_wave(uv.system, k, uv.L);
  const ComplexVal nl = fl.dpsi * in.value - in.deriv * fl.psi;
  const ComplexVal nr = fr.dpsi * in.value - in.deriv * fr.psi;
  return nl / nr;
}

Effective match_effective(const UV& uv) {
  const double kap = uv.system.kappa;
  if (!(kap < 0)) throw Error(ErrorCode::PositiveKappa, "matching needs kappa < 0");
  if (!(uv.L > 0)) throw Error(ErrorCode::InvalidArgument, "L must be positive");
  const double kl = kap * uv.L;
  const double c0 = kap * (-2053.0 / 350 + 4 * euler_gamma - 3 / (kl * kl) + 24 / (5 * kl) -
                           4552 * kl / 7875 + 2 * std::log(-2 * kl));
  const double c2 = (315 - 128 * kl) / (1050 * kap);
  return {standard_b0(uv.system), c0, c2};
}

}  // namespace contactqm::coulomb
