#include <doctest.h>

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "contactqm/coulomb.hpp"
#include "contactqm/error.hpp"
#include "contactqm/freeparticle.hpp"
#include "contactqm/numerics.hpp"
#include "oracles.hpp"

using namespace contactqm;
using namespace contactqm::numerics;
using std::numbers::pi;

TEST_SUITE("numerics") {

TEST_CASE("find_root on simple brackets") {
  CHECK(find_root([](double x) { return x * x - 2; }, {1, 2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(find_root([](double x) { return x; }, {-1, 1})) < 1e-15);
  CHECK(std::abs(find_root([](double x) { return std::cos(x); }, {1, 2}) - pi / 2) < 1e-12);
}

TEST_CASE("find_root stays inside the bracket and reports bad brackets") {
  const double r = find_root([](double x) { return std::atan(x - 0.999999); }, {0.0, 1.0});
  CHECK(r >= 0.0);
  CHECK(r <= 1.0);
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, {-1, 1}), Error);
  try {
    find_root([](double x) { return x * x + 1; }, {-1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSignChange);
  }
  RootConfig tight;
  tight.max_iter = 2;
  tight.abs_tol = 1e-300;
  tight.rel_tol = 0;
  CHECK_THROWS_AS(find_root([](double x) { return std::exp(x) - 2; }, {-50, 50}, tight), Error);
}

TEST_CASE("scan_roots finds known zeros and skips poles") {
  const auto r = scan_roots([](double x) { return std::sin(x); }, 0.5, 7, 1000);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - pi) < 1e-12);
  CHECK(std::abs(r[1] - 2 * pi) < 1e-12);
  CHECK(scan_roots([](double) { return 1.0; }, 0, 1, 10).empty());
  // tan has sign changes at its poles as well as at its zeros.
  const auto t = scan_roots([](double x) { return std::tan(x); }, 0.5, 7, 997);
  REQUIRE(t.size() == 2);
  CHECK(std::abs(t[0] - pi) < 1e-12);
}

TEST_CASE("scan_roots on the Coulomb UV matching function") {
  const coulomb::UV uv{{-1.0, 1.0}, 0.11};
  const auto f = [&](double q) { return coulomb::uv_matching(uv, q); };
  const int steps = 4000;
  const auto roots = scan_roots(f, 0.05, 2.0, steps);
  REQUIRE(!roots.empty());
  // Independent refinement: plain bisection on every sign change of the same grid.
  std::vector<double> ref;
  const double dx = (2.0 - 0.05) / steps;
  for (int i = 0; i < steps; ++i) {
    double a = 0.05 + i * dx, b = a + dx;
    double fa = f(a), fb = f(b);
    if (fa * fb > 0) continue;
    for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
      const double c = 0.5 * (a + b), fc = f(c);
      if (fa * fc <= 0) {
        b = c;
      } else {
        a = c;
        fa = fc;
      }
    }
    const double x = 0.5 * (a + b);
    if (std::abs(f(x)) < 1e-6 * (std::abs(f(0.05 + i * dx)) + std::abs(f(0.05 + (i + 1) * dx)))) ref.push_back(x);
  }
  REQUIRE(roots.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(oracle::rel(roots[i], ref[i]) < 1e-12);
  // The ground state and the first excited states are present.
  CHECK(std::abs(roots.back() - 0.99333284036547886) < 1e-9);
}

TEST_CASE("differentiate is a fourth-order stencil") {
  CHECK(std::abs(differentiate([](double x) { return x * x; }, 3.0) - 6) < 1e-10);
  CHECK(std::abs(differentiate([](double x) { return std::sin(x); }, 0.0) - 1) < 1e-10);
  const auto f = [](double x) { return std::exp(std::sin(x)); };
  const double exact = std::cos(0.7) * std::exp(std::sin(0.7));
  const double e1 = std::abs(differentiate(f, 0.7, 0.04) - exact);
  const double e2 = std::abs(differentiate(f, 0.7, 0.02) - exact);
  CHECK(e1 / e2 == doctest::Approx(16).epsilon(0.1));
  CHECK(default_step(10.0) == doctest::Approx(1e-3));
  CHECK(default_step(0.0) == 1e-6);
  CHECK_THROWS_AS(differentiate(f, 0.7, -1.0), Error);
}

TEST_CASE("differentiate reproduces the analytic Pade slope of tan delta") {
  const freeparticle::UV uv{1.0, 1.3, 1.0};
  const freeparticle::Effective eff = freeparticle::pade_coeffs(uv);
  const double k = 0.1;
  const double num = differentiate([&](double kk) { return freeparticle::eff_tan_delta(eff, kk); }, k);
  const double d = 1 + eff.b2 * k * k;
  const double pade = -eff.a0 * (1 - eff.b2 * k * k) / (d * d);
  CHECK(oracle::rel(num, pade) < 1e-9);
}

TEST_CASE("quad_adaptive on finite and semi-infinite ranges") {
  CHECK(quad_adaptive([](double x) { return x; }, 0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(quad_adaptive([](double x) { return std::exp(-x); }, 0, INFINITY, 1e-13) - 1) < 1e-12);
  const double k0 = quad_adaptive([](double t) { return std::exp(-2 * std::cosh(t)); }, 0, INFINITY, 1e-14);
  CHECK(std::abs(k0 - oracle::bessel_k0_series(2.0)) < 1e-13);
  CHECK(std::abs(k0 - 0.11389387274953344) < 1e-13);
  const double odd = quad_adaptive([](double x) { return std::sin(3 * x) * std::exp(-x * x) * x * x; }, -2, 2, 1e-12);
  CHECK(std::abs(odd) < 1e-12);
}

TEST_CASE("ode_solve_radial against closed forms") {
  const double k = 1.7;
  const auto free = ode_solve_radial([](double) { return 0.0; }, k * k / 2, {1.0, std::sin(k), k * std::cos(k)}, 2.0);
  CHECK(std::abs(free.psi - std::sin(2 * k)) < 1e-8);
  CHECK(std::abs(free.dpsi - k * std::cos(2 * k)) < 1e-8);
  // Inside a well V = -V0 at E = 0: sin(p x).
  const double V0 = 3.0, p = std::sqrt(2 * V0);
  const auto well = ode_solve_radial([&](double) { return -V0; }, 0.0, {0.0, 0.0, p}, 1.3);
  CHECK(std::abs(well.psi - std::sin(p * 1.3)) < 1e-8);
  CHECK(std::abs(well.dpsi - p * std::cos(p * 1.3)) < 1e-8);
  // Backwards integration.
  const auto back = ode_solve_radial([](double) { return 0.0; }, k * k / 2, {2.0, std::sin(2 * k), k * std::cos(2 * k)}, 1.0);
  CHECK(std::abs(back.psi - std::sin(k)) < 1e-8);
}

TEST_CASE("ode_solve_radial matches the Coulomb decaying solution") {
  const double kappa = -1, q = 0.5, x = 0.5;
  const coulomb::System s{kappa, 1.0};
  const auto V = [&](double xx) { return kappa / xx; };
  const double ode = oracle::decaying_log_derivative(V, -q * q / 2, 1.0, 40.0, x);
  const auto w = coulomb::exterior_bound_wave(s, q, x);
  CHECK(oracle::rel(ode, (w.dpsi / w.psi).real()) < 1e-6);
}

TEST_CASE("ode_solve_radial conserves the Wronskian") {
  const auto V = [](double x) { return -2.0 / x + 0.3 / (x * x); };
  const double E = 0.4;
  RadialState a{0.5, 1.0, 0.0}, b{0.5, 0.0, 1.0};
  const double w0 = 1.0;
  for (double x : {1.0, 3.0, 8.0, 15.0}) {
    a = ode_solve_radial(V, E, a, x);
    b = ode_solve_radial(V, E, b, x);
    const double w = (a.psi * b.dpsi - a.dpsi * b.psi).real();
    CHECK(oracle::rel(w, w0) < 1e-8);
  }
}

TEST_CASE("ode_solve_radial reports step underflow at a singularity") {
  CHECK_THROWS_AS(ode_solve_radial([](double x) { return 1.0 / std::pow(x - 1.0, 4); }, 0.0, {0.5, 1.0, 0.0}, 1.5),
                  Error);
}

TEST_CASE("fit_pade_02") {
  std::vector<std::pair<double, double>> s;
  for (int i = 1; i <= 8; ++i) {
    const double k = 0.05 * i;
    s.emplace_back(k, -k * 2.0 / (1 - 0.5 * k * k));
  }
  PadeFit f = fit_pade_02(s);
  CHECK(std::abs(f.a0 - 2.0) < 1e-10);
  CHECK(std::abs(f.b2 + 0.5) < 1e-10);
  CHECK(f.b2_determinate);

  for (auto& [k, t] : s) t = 0.0;
  f = fit_pade_02(s);
  CHECK(f.a0 == 0.0);
  CHECK(!f.b2_determinate);
  CHECK(std::isnan(f.b2));

  std::vector<std::pair<double, double>> few(s.begin(), s.begin() + 3);
  CHECK_THROWS_AS(fit_pade_02(few), Error);
  std::vector<std::pair<double, double>> same(5, {0.1, 0.2});
  CHECK_THROWS_AS(fit_pade_02(same), Error);
}

TEST_CASE("fit_pade_02 on square-well samples agrees with the closed-form coefficients") {
  const freeparticle::UV uv{1.0, 1.3, 1.0};
  const freeparticle::Effective eff = freeparticle::pade_coeffs(uv);
  // k in {0.01 .. 0.1}: the O(k^5) model mismatch limits a0 to ~1e-5 and b2 to ~1e-2.
  std::vector<std::pair<double, double>> coarse, fine;
  for (int i = 1; i <= 10; ++i) {
    coarse.emplace_back(0.01 * i, freeparticle::uv_tan_delta(uv, 0.01 * i));
    fine.emplace_back(0.001 * i, freeparticle::uv_tan_delta(uv, 0.001 * i));
  }
  const PadeFit c = fit_pade_02(coarse);
  CHECK(oracle::rel(c.a0, eff.a0) < 1e-4);
  CHECK(oracle::rel(c.b2, eff.b2) < 1e-2);
  const PadeFit f = fit_pade_02(fine);
  CHECK(oracle::rel(f.a0, eff.a0) < 1e-6);
  CHECK(oracle::rel(f.b2, eff.b2) < 1e-4);
}

}
