#include "contactqm/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "contactqm/error.hpp"
#include "contactqm/numerics.hpp"

namespace contactqm::specfun {

namespace {

using std::numbers::pi;

constexpr double kSeriesRange = 30.0;
constexpr double kBesselRange = 15.0;

bool is_nonpositive_integer(ComplexVal z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Lanczos g = 7, n = 9, valid for Re z >= 0.5.
ComplexVal lanczos_log_gamma(ComplexVal z) {
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  ComplexVal x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
  const ComplexVal t = z + 7.5;
  return 0.5 * std::log(2 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// cot(pi z) with exact reduction of Re z to [-1/2, 1/2], so arguments one ulp
// from an integer keep their offset. Safe for large |Im z|.
ComplexVal cot_pi(ComplexVal z) {
  const double x = pi * (z.real() - std::nearbyint(z.real())), y = pi * z.imag();
  if (std::abs(y) > 350.0) return {0.0, y > 0 ? -1.0 : 1.0};
  const double sx = std::sin(x), shy = std::sinh(y);
  const double den = 2 * (sx * sx + shy * shy);  // cosh 2y - cos 2x
  return {std::sin(2 * x) / den, -std::sinh(2 * y) / den};
}

}  // namespace

ComplexVal log_gamma(ComplexVal z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorCode::InvalidArgument, "log_gamma argument not finite");
  if (is_nonpositive_integer(z)) throw Error(ErrorCode::PoleAtNonPositiveInteger, "log_gamma pole");
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  // Shift right with the recurrence; summing principal logs keeps the branch
  // of the analytic continuation.
  const int n = static_cast<int>(std::ceil(0.5 - z.real()));
  if (n > 100000) throw Error(ErrorCode::RangeExceeded, "log_gamma argument too far left");
  ComplexVal acc = 0.0;
  for (int j = 0; j < n; ++j) acc += std::log(z + static_cast<double>(j));
  return lanczos_log_gamma(z + static_cast<double>(n)) - acc;
}

ComplexVal rgamma(ComplexVal z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

ComplexVal digamma(ComplexVal z) {
  if (is_nonpositive_integer(z)) throw Error(ErrorCode::PoleAtNonPositiveInteger, "digamma pole");
  if (z.real() < 0.5) return digamma(1.0 - z) - pi * cot_pi(z);
  ComplexVal acc = 0.0;
  while (std::abs(z) < 12.0 || z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const ComplexVal w = 1.0 / (z * z);
  // Bernoulli tail through B14.
  const ComplexVal tail =
      w * (1.0 / 12 -
           w * (1.0 / 120 -
                w * (1.0 / 252 - w * (1.0 / 240 - w * (1.0 / 132 - w * (691.0 / 32760 - w / 12.0))))));
  return acc + std::log(z) - 0.5 / z - tail;
}

ComplexVal kummer_m(ComplexVal a, ComplexVal b, ComplexVal z) {
  if (std::abs(z) > kSeriesRange) throw Error(ErrorCode::RangeExceeded, "kummer_m: |z| > 30");
  if (is_nonpositive_integer(b)) throw Error(ErrorCode::PoleInCoefficients, "kummer_m: b is a pole");
  ComplexVal term = 1.0, sum = 1.0;
  int small = 0;
  for (int k = 0; k < 5000; ++k) {
    term *= (a + static_cast<double>(k)) / (b + static_cast<double>(k)) * z / static_cast<double>(k + 1);
    sum += term;
    if (term == 0.0) return sum;
    // Past this point successive terms shrink by at least a factor of two.
    const bool tail = std::abs((a + static_cast<double>(k + 1)) * z) < 0.5 * std::abs(b + static_cast<double>(k + 1)) * (k + 2);
    if (tail && std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small >= 3) return sum;
    } else {
      small = 0;
    }
  }
  throw Error(ErrorCode::RangeExceeded, "kummer_m: series did not stagnate");
}

ComplexVal kummer_u_int(ComplexVal a, int n, ComplexVal z) {
  if (is_nonpositive_integer(a)) throw Error(ErrorCode::PoleInCoefficients, "kummer_u: a is a non-positive integer");
  return rgamma(a) * kummer_u_int_scaled(a, n, z);
}

ComplexVal kummer_u_int_scaled(ComplexVal a, int n, ComplexVal z) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "kummer_u_int: n < 0");
  if (z == 0.0 || std::abs(z) > kSeriesRange)
    throw Error(ErrorCode::RangeExceeded, "kummer_u: z outside working range");
  if (is_nonpositive_integer(a)) throw Error(ErrorCode::PoleInCoefficients, "kummer_u: a is a non-positive integer");

  const ComplexVal logz = std::log(z);
  // Harmonic numbers H_k = psi(k+1) + gamma.
  double n_fact = 1.0;
  for (int i = 2; i <= n; ++i) n_fact *= i;

  ComplexVal first = 0.0;
  // Gamma(a) / Gamma(a - n) as a product: forming a - n directly can round an
  // argument that sits one ulp off an integer onto the pole.
  ComplexVal pref = 1.0;
  for (int j = 1; j <= n; ++j) pref *= a - static_cast<double>(j);
  if (pref != 0.0) {
    ComplexVal psi_a = digamma(a);
    double h_k = 0.0;  // H_k
    double h_nk = 0.0;  // H_{n+k}
    for (int i = 1; i <= n; ++i) h_nk += 1.0 / i;
    ComplexVal coef = 1.0;  // (a)_k z^k / ((n+1)_k k!)
    int small = 0;
    for (int k = 0; k < 5000; ++k) {
      const ComplexVal term = coef * (logz + psi_a - (h_k - euler_gamma) - (h_nk - euler_gamma));
      first += term;
      const ComplexVal ak = a + static_cast<double>(k);
      const bool tail = std::abs(ak * z) < 0.5 * (n + 1 + k) * (k + 1);
      if (tail && std::abs(term) <= 1e-17 * std::abs(first)) {
        if (++small >= 3) break;
      } else {
        small = 0;
      }
      if (k == 4999) throw Error(ErrorCode::RangeExceeded, "kummer_u: series did not stagnate");
      coef *= ak * z / (static_cast<double>(n + 1 + k) * (k + 1));
      // Step psi(a+k) -> psi(a+k+1); recompute directly after passing a pole.
      psi_a = std::abs(ak) < 0.5 ? digamma(ak + 1.0) : psi_a + 1.0 / ak;
      h_k += 1.0 / (k + 1);
      h_nk += 1.0 / (n + k + 1);
    }
    first *= pref * ((n + 1) % 2 == 0 ? 1.0 : -1.0) / n_fact;
  }

  ComplexVal second = 0.0;
  if (n >= 1) {
    for (int k = 1; k <= n; ++k) {
      double fact_km1 = 1.0;
      for (int i = 2; i <= k - 1; ++i) fact_km1 *= i;
      double fact_nk = 1.0;
      for (int i = 2; i <= n - k; ++i) fact_nk *= i;
      ComplexVal poch = 1.0;  // (1 - a + k)_{n-k}
      for (int i = 0; i < n - k; ++i) poch *= 1.0 - a + static_cast<double>(k + i);
      second += fact_km1 * poch / fact_nk * std::pow(z, -k);
    }
  }
  return first + second;
}

namespace {

double k_imag_integral(double g, double x, bool deriv) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::NonConvergent, "bessel_k_imag needs x > 0");
  // Beyond t_max the integrand is below e^{-x} e^{-45}.
  const double t_max = std::acosh(1.0 + 45.0 / x);
  const double scale = std::exp(-x);
  const numerics::RealFunction f = [g, x, deriv](double t) {
    const double c = std::cosh(t);
    const double v = std::exp(-x * c) * std::cos(g * t);
    return deriv ? -c * v : v;
  };
  const double tol = 1e-15 * scale * (deriv ? 1.0 + 1.0 / x : 1.0) * std::max(1.0, t_max);
  return numerics::quad_adaptive(f, 0.0, t_max, tol);
}

}  // namespace

double bessel_k_imag(double g, double x) { return k_imag_integral(g, x, false); }

double bessel_k_imag_deriv(double g, double x) { return k_imag_integral(g, x, true); }

namespace {

// Sum_k (-z^2/4)^k / (k! Gamma(nu+k+1)) and the matching derivative sum.
void j_series(ComplexVal nu, double z, ComplexVal& value, ComplexVal& deriv) {
  if (!(z > 0.0) || z > kBesselRange) throw Error(ErrorCode::RangeExceeded, "bessel_j: z outside (0, 15]");
  const ComplexVal lead = std::exp(nu * std::log(z / 2)) * rgamma(nu + 1.0);
  ComplexVal term = 1.0, sum = 0.0, dsum = 0.0;
  const double w = -z * z / 4;
  for (int k = 0; k < 500; ++k) {
    sum += term;
    dsum += term * (nu + 2.0 * k);
    if (k > z && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    term *= w / ((k + 1.0) * (nu + static_cast<double>(k + 1)));
  }
  value = lead * sum;
  deriv = lead * dsum / z;
}

void hankel_pair(HankelKind kind, double g, double z, ComplexVal& h, ComplexVal& dh) {
  if (!(g > 1e-8)) throw Error(ErrorCode::InvalidArgument, "hankel_imag needs g > 0");
  ComplexVal jp, djp, jm, djm;
  j_series({0.0, g}, z, jp, djp);
  j_series({0.0, -g}, z, jm, djm);
  const double sh = std::sinh(g * pi);
  if (kind == HankelKind::First) {
    const double e = std::exp(g * pi);
    h = -(jm - e * jp) / sh;
    dh = -(djm - e * djp) / sh;
  } else {
    const double e = std::exp(-g * pi);
    h = (jm - e * jp) / sh;
    dh = (djm - e * djp) / sh;
  }
}

}  // namespace

ComplexVal bessel_j(ComplexVal nu, double z) {
  ComplexVal v, d;
  j_series(nu, z, v, d);
  return v;
}

ComplexVal bessel_j_deriv(ComplexVal nu, double z) {
  ComplexVal v, d;
  j_series(nu, z, v, d);
  return d;
}

ComplexVal hankel_imag(HankelKind kind, double g, double z) {
  ComplexVal h, dh;
  hankel_pair(kind, g, z, h, dh);
  return h;
}

ComplexVal hankel_imag_deriv(HankelKind kind, double g, double z) {
  ComplexVal h, dh;
  hankel_pair(kind, g, z, h, dh);
  return dh;
}

}  // namespace contactqm::specfun
