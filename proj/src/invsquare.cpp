#include "contactqm/invsquare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "contactqm/error.hpp"
#include "inner_wave.hpp"

namespace contactqm::invsquare {

namespace {

using std::numbers::pi;

constexpr double kMinG = 1e-3;

struct RawConstants {
  double A, B, C, D;
};

RawConstants raw_constants(double alpha) {
  const double g2 = alpha - 0.25;
  const double g = std::sqrt(g2);
  const double r = std::sqrt(alpha), s = std::sin(r), c = std::cos(r);
  return {4 * (1 + g2) * r * (s - 2 * r * c), 2 * (1 + g2 - alpha) * c + (1 - 2 * g2) * r * s,
          8 * g * (1 + g2) * r * s, -g * ((4 + 4 * g2 - 2 * alpha) * c + 3 * r * s)};
}

// arctan(C/A) continued in alpha from its value ~0 at alpha -> 1/4.
double continuous_arctan(double alpha) {
  const double start = 0.25 + kMinG * kMinG;
  const int steps = std::max(1, static_cast<int>(std::ceil((alpha - start) / 0.005)));
  double prev = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double a = i == steps ? alpha : start + (alpha - start) * i / steps;
    const RawConstants k = raw_constants(a);
    double v = std::atan2(k.C, k.A);
    v += pi * std::round((prev - v) / pi);
    prev = v;
  }
  return prev;
}

void check_g(double g) {
  if (!(g >= kMinG)) throw Error(ErrorCode::GRangeError, "g below 1e-3 (alpha too close to 1/4)");
}

ComplexVal gamma_minus_ig(double g) { return std::exp(specfun::log_gamma({0.0, -g})); }

// Bracket of half a tower spacing on either side of q in log space.
numerics::Bracket log_bracket(double q, double g, double q_max) {
  const double w = std::exp(0.5 * pi / g);
  return {q / w, std::min(q * w, q_max)};
}

}  // namespace

System System::from_alpha(double alpha, double m) {
  if (!(alpha > 0.25)) throw Error(ErrorCode::GRangeError, "alpha must exceed 1/4");
  if (!(m > 0)) throw Error(ErrorCode::InvalidArgument, "mass must be positive");
  const double g = std::sqrt(alpha - 0.25);
  check_g(g);
  return System(alpha, m, g);
}

double arg_gamma_minus_ig(double g) { return specfun::log_gamma({0.0, -g}).imag(); }

UVConstants uv_constants(const System& s) {
  const RawConstants k = raw_constants(s.alpha());
  const double den = k.A * k.A + k.C * k.C;
  if (!(den > 0)) throw Error(ErrorCode::GRangeError, "A = C = 0");
  return {k.A, k.B, k.C, k.D, (k.A * k.D - k.B * k.C) / den, continuous_arctan(s.alpha())};
}

double running_Zt(double b, const System& s, double xb) {
  if (!(b > 0) || !(xb > 0)) throw Error(ErrorCode::InvalidArgument, "b and xb must be positive");
  const double g = s.g();
  return 2 / (1 + 4 * g * g) * (2 * g * std::tan(g * std::log(b / xb)) - 1);
}

double rg_flow_rhs(const System& s, double Zt, double xb) {
  const double g = s.g();
  return -((2 + Zt) * (2 + Zt) + (2 * g * Zt) * (2 * g * Zt)) / (4 * xb);
}

double quantization_residual(const System& s, double q, double xb, double Zt) {
  const double g = s.g();
  const ComplexVal w = ComplexVal(2 + Zt, 2 * g * Zt) *
                       std::exp(ComplexVal(0.0, g * std::log(q * xb / 2))) * gamma_minus_ig(g);
  return w.real() / std::abs(w);
}

double running_bound_q(const Effective& eff, const System& s, int n, double xb) {
  const double g = s.g();
  const auto f = [&](double q) {
    const double b = eff.b0 * std::exp(eff.c2 * q * q);
    return quantization_residual(s, q, xb, running_Zt(b, s, xb));
  };
  const double guess = eff.c2 == 0.0 ? lo_bound_q_value(eff, s, n) : nlo_bound_q(eff, s, n);
  return numerics::find_root(f, log_bracket(guess, g, guess * 1e6));
}

double lo_bound_q_value(const Effective& eff, const System& s, int n) {
  if (!(eff.b0 > 0)) throw Error(ErrorCode::InvalidArgument, "b0 must be positive");
  const double g = s.g();
  return 2 / eff.b0 * std::exp(((n + 0.5) * pi + std::atan(1 / (2 * g)) - arg_gamma_minus_ig(g)) / g);
}

WindowedMomentum lo_bound_q(const Effective& eff, const System& s, int n, double validity_length) {
  const double q = lo_bound_q_value(eff, s, n);
  const double len = validity_length > 0 ? validity_length : eff.b0;
  return {q, q * len < kValidityWindow};
}

double nlo_bound_q(const Effective& eff, const System& s, int n) {
  const double q0 = lo_bound_q_value(eff, s, n);
  const double shift = eff.c2 * q0 * q0;
  if (!(std::abs(shift) < 0.5)) throw Error(ErrorCode::PerturbativityViolated, "|c2| q0^2 >= 0.5");
  return q0 * (1 - shift);
}

ComplexVal lo_phase_factor(double b, const System& s, double k) {
  if (!(k > 0) || !(b > 0)) throw Error(ErrorCode::InvalidArgument, "k and b must be positive");
  const double g = s.g();
  const ComplexVal P = std::exp(ComplexVal(0.0, g * std::log(k * b / 2))) * ComplexVal(2 * g, -1) *
                       gamma_minus_ig(g);
  const double e = std::exp(pi * g);
  const ComplexVal den = e * P + std::conj(P);
  if (std::abs(den) == 0.0) throw Error(ErrorCode::DomainViolation, "phase factor denominator vanishes");
  return ComplexVal(0.0, 1.0) * (P + e * std::conj(P)) / den;
}

ComplexVal nlo_phase_factor(const Effective& eff, const System& s, double k) {
  const double shrink = 1 - eff.c2 * k * k;
  if (!(shrink > 0)) throw Error(ErrorCode::PerturbativityViolated, "c2 k^2 >= 1");
  return lo_phase_factor(eff.b0 * shrink, s, k);
}

double uv_matching(const UV& uv, double q) {
  if (!(q > 0)) throw Error(ErrorCode::InvalidArgument, "q must be positive");
  const double g = uv.system.g(), L = uv.L;
  const double p2 = uv.system.alpha() / (L * L) - q * q;
  if (!(p2 > 0)) throw Error(ErrorCode::DomainViolation, "interior momentum is not real");
  const double K = specfun::bessel_k_imag(g, q * L);
  const double dK = specfun::bessel_k_imag_deriv(g, q * L);
  const double r = std::sqrt(L);
  const double psi = r * K, dpsi = K / (2 * r) + r * q * dK;
  const detail::InnerWave in = detail::inner_wave(p2, L);
  return dpsi * in.value - psi * in.deriv;
}

double uv_bound_q_exact(const UV& uv, numerics::Bracket bracket) {
  return numerics::find_root([&](double q) { return uv_matching(uv, q); }, bracket);
}

double uv_bound_q_leading(const UV& uv, int n) {
  if (!(uv.L > 0)) throw Error(ErrorCode::InvalidArgument, "L must be positive");
  const double g = uv.system.g();
  const UVConstants c = uv_constants(uv.system);
  return 2 / uv.L * std::exp(((n + 0.5) * pi - c.arctan_CA - arg_gamma_minus_ig(g)) / g);
}

double uv_bound_q_perturbative(const UV& uv, int n) {
  const double q0 = uv_bound_q_leading(uv, n);
  const UVConstants c = uv_constants(uv.system);
  const double x = q0 * uv.L;
  const double shift = c.f_alpha / uv.system.g() * x * x;
  if (!(x < 1.0) || !(std::abs(shift) < 0.5))
    throw Error(ErrorCode::PerturbativityViolated, "q0 L outside the perturbative range");
  return q0 * (1 - shift);
}

double uv_bound_q_exact(const UV& uv, int n) {
  const double q_max = std::sqrt(uv.system.alpha()) / uv.L * (1 - 1e-9);
  double guess = uv_bound_q_leading(uv, n);
  try {
    guess = uv_bound_q_perturbative(uv, n);
  } catch (const Error&) {
  }
  if (!(guess < q_max)) throw Error(ErrorCode::NoSignChange, "level lies above the cap scale");
  return uv_bound_q_exact(uv, log_bracket(guess, uv.system.g(), q_max));
}

int uv_top_level(const UV& uv, double window) {
  const double g = uv.system.g();
  const UVConstants c = uv_constants(uv.system);
  const double v = (g * std::log(window / 2) + c.arctan_CA + arg_gamma_minus_ig(g)) / pi - 0.5;
  // q0 L < window is strict.
  return static_cast<int>(std::ceil(v)) - 1;
}

ComplexVal uv_phase_factor(const UV& uv, double k) {
  if (!(k > 0)) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  using specfun::HankelKind;
  const double g = uv.system.g(), L = uv.L;
  const double p2 = uv.system.alpha() / (L * L) + k * k;
  const detail::InnerWave in = detail::inner_wave(p2, L);
  const double r = std::sqrt(L);
  const auto n_of = [&](HankelKind kind) {
    const ComplexVal h = specfun::hankel_imag(kind, g, k * L);
    const ComplexVal dh = specfun::hankel_imag_deriv(kind, g, k * L);
    const ComplexVal G = r * h, dG = h / (2 * r) + r * k * dh;
    return dG * in.value - in.deriv * G;
  };
  const ComplexVal n1 = n_of(HankelKind::First), n2 = n_of(HankelKind::Second);
  return n2 / (ComplexVal(0.0, std::exp(-g * pi)) * n1);
}

Effective match_effective(const UV& uv) {
  if (!(uv.L > 0)) throw Error(ErrorCode::InvalidArgument, "L must be positive");
  const double g = uv.system.g();
  const UVConstants c = uv_constants(uv.system);
  return {uv.L * std::exp((std::atan(1 / (2 * g)) + c.arctan_CA) / g), c.f_alpha * uv.L * uv.L / g};
}

}  // namespace contactqm::invsquare
