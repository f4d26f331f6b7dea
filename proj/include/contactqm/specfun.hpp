#pragma once

#include <complex>

namespace contactqm::specfun {

using ComplexVal = std::complex<double>;

inline constexpr double euler_gamma = 0.5772156649015329;

// Principal branch of log Gamma(z).
ComplexVal log_gamma(ComplexVal z);
// 1/Gamma(z); entire, returns 0 at the poles of Gamma.
ComplexVal rgamma(ComplexVal z);
ComplexVal digamma(ComplexVal z);

// Kummer M(a, b, z), Taylor series, |z| <= 30.
ComplexVal kummer_m(ComplexVal a, ComplexVal b, ComplexVal z);

// Tricomi U(a, n + 1, z) for integer n >= 0 from the logarithmic series.
ComplexVal kummer_u_int(ComplexVal a, int n, ComplexVal z);
// Gamma(a) U(a, n+1, z); finite where Gamma(a) and U separately overflow.
ComplexVal kummer_u_int_scaled(ComplexVal a, int n, ComplexVal z);
inline ComplexVal kummer_u_b2(ComplexVal a, ComplexVal z) { return kummer_u_int(a, 1, z); }

// K_{ig}(x) and its x-derivative from the real integral representation.
double bessel_k_imag(double g, double x);
double bessel_k_imag_deriv(double g, double x);

// J_nu(z) for complex order and real z > 0, ascending series, z <= 15.
ComplexVal bessel_j(ComplexVal nu, double z);
ComplexVal bessel_j_deriv(ComplexVal nu, double z);

enum class HankelKind { First = 1, Second = 2 };

// H^{(1,2)}_{ig}(z) via J_{+-ig}; requires g > 0.
ComplexVal hankel_imag(HankelKind kind, double g, double z);
ComplexVal hankel_imag_deriv(HankelKind kind, double g, double z);

}  // namespace contactqm::specfun
