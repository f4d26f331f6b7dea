#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "contactqm/error.hpp"
#include "contactqm/invsquare.hpp"
#include "contactqm/numerics.hpp"
#include "contactqm/specfun.hpp"
#include "oracles.hpp"

using namespace contactqm;
using namespace contactqm::invsquare;
using std::numbers::pi;
using C = std::complex<double>;

namespace {

const System kS = System::from_alpha(1.5);
const UV kUV{kS, 1.0};

// sqrt(x) H_ig(k x) and its derivative.
struct Wave {
  C psi, dpsi;
};
Wave hankel_wave(specfun::HankelKind kind, double g, double k, double x) {
  const C h = specfun::hankel_imag(kind, g, k * x), dh = specfun::hankel_imag_deriv(kind, g, k * x);
  return {std::sqrt(x) * h, h / (2 * std::sqrt(x)) + std::sqrt(x) * k * dh};
}

}  // namespace

TEST_SUITE("invsquare") {

TEST_CASE("system construction") {
  CHECK(kS.g() == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK_THROWS_AS(System::from_alpha(0.25), Error);
  CHECK_THROWS_AS(System::from_alpha(0.1), Error);
  CHECK_THROWS_AS(System::from_alpha(0.25 + 1e-7), Error);
}

TEST_CASE("UV constants at alpha = 1.5") {
  const UVConstants c = uv_constants(kS);
  CHECK(c.A == doctest::Approx(1.2112489121211394).epsilon(1e-13));
  CHECK(c.B == doctest::Approx(-1.2194327856476983).epsilon(1e-13));
  CHECK(c.C == doctest::Approx(23.186393971713887).epsilon(1e-13));
  CHECK(c.D == doctest::Approx(-6.1397277804565755).epsilon(1e-13));
  CHECK(std::abs(c.f_alpha - (c.A * c.D - c.B * c.C) / (c.A * c.A + c.C * c.C)) < 1e-15);
  CHECK(std::abs(std::tan(c.arctan_CA) - c.C / c.A) < 1e-12 * std::abs(c.C / c.A));
  CHECK(c.arctan_CA == doctest::Approx(-1.6229885257825116).epsilon(1e-12));
}

TEST_CASE("arctan(C/A) branch is continuous in alpha") {
  double prev = uv_constants(System::from_alpha(0.3)).arctan_CA;
  for (double a = 0.31; a <= 5.0; a += 0.01) {
    const double cur = uv_constants(System::from_alpha(a)).arctan_CA;
    CHECK(std::abs(cur - prev) < 0.2);
    prev = cur;
  }
}

TEST_CASE("f(alpha) agrees with the small-qL shift of exact roots") {
  const int top = uv_top_level(kUV);
  const double g = kS.g();
  const UVConstants c = uv_constants(kS);
  for (int n : {top, top - 1}) {
    const double q0 = uv_bound_q_leading(kUV, n), qx = uv_bound_q_exact(kUV, n);
    const double f_est = g * std::log(q0 / qx) / (q0 * q0);
    CHECK(oracle::rel(f_est, c.f_alpha) < 2e-3 * (n == top ? 1.0 : 1e-2));
  }
}

TEST_CASE("LO tower is geometric") {
  const Effective e = match_effective(kUV);
  const double ratio = std::exp(pi / kS.g());
  CHECK(ratio == doctest::Approx(16.61).epsilon(1e-3));
  for (int n = -6; n <= 0; ++n)
    CHECK(oracle::rel(lo_bound_q_value(e, kS, n + 1) / lo_bound_q_value(e, kS, n), ratio) < 1e-12);
  const Effective e2{2 * e.b0, e.c2};
  CHECK(oracle::rel(lo_bound_q_value(e2, kS, -3), lo_bound_q_value(e, kS, -3) / 2) < 1e-14);
  CHECK(!lo_bound_q(e, kS, 3, kUV.L).in_window);
  CHECK(lo_bound_q(e, kS, -3, kUV.L).in_window);
}

TEST_CASE("NLO spectrum") {
  const Effective e = match_effective(kUV);
  const Effective lo{e.b0, 0.0};
  for (int n = -5; n <= -2; ++n) {
    CHECK(nlo_bound_q(lo, kS, n) == lo_bound_q_value(lo, kS, n));
    CHECK(oracle::rel(nlo_bound_q(e, kS, n), uv_bound_q_perturbative(kUV, n)) < 1e-13);
    const double qx = uv_bound_q_exact(kUV, n);
    const double q0L = lo_bound_q_value(e, kS, n) * kUV.L;
    CHECK(std::abs(nlo_bound_q(e, kS, n) - qx) / qx < 10 * std::pow(q0L, 4) + 1e-14);
  }
  CHECK_THROWS_AS(nlo_bound_q(e, kS, 2), Error);
}

TEST_CASE("two-constant structure of the NLO tower") {
  const Effective e = match_effective(kUV);
  const double g = kS.g();
  // q_n / u_n = a - (a b) u_n^2 with u_n = exp(n pi / g): fit on three levels.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n = -5; n <= -3; ++n) {
    const double u = std::exp(n * pi / g), x = u * u, y = nlo_bound_q(e, kS, n) / u;
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / 3;
  const double u = std::exp(-2 * pi / g);
  CHECK(oracle::rel((icpt + slope * u * u) * u, nlo_bound_q(e, kS, -2)) < 1e-10);
}

TEST_CASE("RG flow of the running boundary function") {
  const double g = kS.g();
  for (double b : {0.3, 2.0})
    for (double xb : {0.01, 0.05, 0.2}) {
      const double zt = running_Zt(b, kS, xb);
      const double fd = numerics::differentiate([&](double x) { return running_Zt(b, kS, x); }, xb, 1e-4 * xb);
      const double rhs = -((2 + zt) * (2 + zt) + 4 * g * g * zt * zt) / (4 * xb);
      CHECK(std::abs(rg_flow_rhs(kS, zt, xb) - rhs) < 1e-14 * std::abs(rhs));
      CHECK(std::abs(fd - rhs) < 1e-9 * std::abs(rhs));
    }
}

TEST_CASE("running roots do not depend on the boundary position") {
  const Effective e = match_effective(kUV);
  for (int n = -4; n <= -2; ++n) {
    const double q = running_bound_q(e, kS, n, 1e-4);
    for (double xb : {3e-4, 1e-3})
      CHECK(oracle::rel(running_bound_q(e, kS, n, xb), q) < 1e-9);
  }
}

TEST_CASE("LO and NLO phase factors") {
  const Effective e = match_effective(kUV);
  const double g = kS.g();
  for (int i = 0; i < 50; ++i) {
    const double k = 0.01 + i * 0.02;
    const C s = lo_phase_factor(e.b0, kS, k);
    CHECK(std::abs(std::abs(s) - 1) < 1e-10);
    CHECK(std::abs(lo_phase_factor(e.b0, kS, k * std::exp(pi / g)) - s) < 1e-10);
    CHECK(std::abs(lo_phase_factor(2 * e.b0, kS, k) - lo_phase_factor(e.b0, kS, 2 * k)) < 1e-12);
    CHECK(std::abs(std::abs(nlo_phase_factor(e, kS, k)) - 1) < 1e-10);
    CHECK(nlo_phase_factor({e.b0, 0.0}, kS, k) == s);
  }
  CHECK_THROWS_AS(nlo_phase_factor({1.0, 1.0}, kS, 1.5), Error);
}

TEST_CASE("UV matching against an ODE oracle") {
  const double a = kS.alpha();
  for (double q : {0.02, 0.2, 0.9}) {
    const double L = kUV.L;
    const double ode = oracle::decaying_log_derivative([&](double x) { return -a / (2 * x * x); }, -q * q / 2, 1.0,
                                                       L + 40 / q, L);
    const double K = specfun::bessel_k_imag(kS.g(), q * L), dK = specfun::bessel_k_imag_deriv(kS.g(), q * L);
    const double ld = (K / (2 * L) + q * dK) / K;
    CHECK(std::abs(ld - ode) < 1e-8 * std::max(1.0, std::abs(ode)));
    const double p = std::sqrt(a / (L * L) - q * q);
    const double diff = uv_matching(kUV, q) / (std::sqrt(L) * K * std::sin(p * L));
    CHECK(std::abs(diff - (ode - p / std::tan(p * L))) < 1e-8 * std::max(1.0, std::abs(diff)));
  }
}

TEST_CASE("exact UV roots approach the geometric ratio") {
  const int top = uv_top_level(kUV);
  CHECK(top == -2);
  CHECK(uv_bound_q_exact(kUV, top) == doctest::Approx(0.023992216187184456).epsilon(1e-10));
  const double ratio = std::exp(pi / kS.g());
  double prev_dev = 1.0;
  for (int n = top; n >= top - 3; --n) {
    const double dev = std::abs(uv_bound_q_exact(kUV, n) / uv_bound_q_exact(kUV, n - 1) / ratio - 1);
    CHECK(dev < prev_dev);
    prev_dev = dev;
  }
  CHECK(prev_dev < 1e-10);
}

TEST_CASE("perturbative UV roots") {
  const int top = uv_top_level(kUV);
  // O((qL)^4) residual: the relative error scales by ratio^4 per level.
  const double r4 = std::pow(std::exp(pi / kS.g()), 4);
  const double e0 = std::abs(uv_bound_q_perturbative(kUV, top) / uv_bound_q_exact(kUV, top) - 1);
  const double e1 = std::abs(uv_bound_q_perturbative(kUV, top - 1) / uv_bound_q_exact(kUV, top - 1) - 1);
  CHECK(e0 < 1e-8);
  CHECK(e0 / e1 > 0.2 * r4);
  // q0 scales as 1/L.
  const UV half{kS, 0.5};
  CHECK(oracle::rel(uv_bound_q_leading(half, top), 2 * uv_bound_q_leading(kUV, top)) < 1e-13);
  // Smooth in alpha around 1.5.
  double q[3];
  for (int i = 0; i < 3; ++i) q[i] = uv_bound_q_perturbative({System::from_alpha(1.4 + 0.1 * i), 1.0}, top);
  CHECK(std::abs(q[0] - 2 * q[1] + q[2]) < 0.5 * std::abs(q[2] - q[0]));
  CHECK_THROWS_AS(uv_bound_q_perturbative(kUV, 4), Error);
}

TEST_CASE("matching scales with L") {
  const Effective e1 = match_effective(kUV), e2 = match_effective({kS, 2.5});
  CHECK(oracle::rel(e2.b0, 2.5 * e1.b0) < 1e-14);
  CHECK(oracle::rel(e2.c2, 6.25 * e1.c2) < 1e-14);
  CHECK(e1.b0 == doctest::Approx(0.34112451425197099).epsilon(1e-12));
  CHECK(e1.c2 == doctest::Approx(0.034573299977845237).epsilon(1e-12));
}

TEST_CASE("UV phase factor against ODE propagation") {
  const double g = kS.g(), a = kS.alpha(), L = kUV.L;
  for (double k : {0.1, 0.5, 1.5}) {
    const double p = std::sqrt(a / (L * L) + k * k), x2 = 3.0;
    const auto out = numerics::ode_solve_radial([&](double x) { return -a / (2 * x * x); }, k * k / 2,
                                                {L, std::sin(p * L), p * std::cos(p * L)}, x2);
    const Wave w1 = hankel_wave(specfun::HankelKind::First, g, k, x2);
    const Wave w2 = hankel_wave(specfun::HankelKind::Second, g, k, x2);
    const C det = w1.psi * w2.dpsi - w2.psi * w1.dpsi;
    const C c1 = (out.psi * w2.dpsi - w2.psi * out.dpsi) / det;
    const C c2 = (w1.psi * out.dpsi - out.psi * w1.dpsi) / det;
    const C S = C(0.0, std::exp(g * pi)) * c1 / c2;
    CHECK(oracle::rel(S, uv_phase_factor(kUV, k)) < 1e-7);
  }
}

TEST_CASE("UV phase factor: unitarity and low-k agreement with LO") {
  const Effective e = match_effective(kUV);
  for (int i = 0; i < 200; ++i) {
    const double k = 0.05 + i * (3.0 - 0.05) / 199;
    CHECK(std::abs(std::abs(uv_phase_factor(kUV, k)) - 1) < 1e-10);
  }
  for (double k : {1e-3, 3e-3, 1e-2})
    CHECK(std::abs(uv_phase_factor(kUV, k) - lo_phase_factor(e.b0, kS, k)) < 20 * k * k);
}

}
