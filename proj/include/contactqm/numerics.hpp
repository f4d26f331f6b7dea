#pragma once

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace contactqm::numerics {

using RealFunction = std::function<double(double)>;

struct Bracket {
  double lo;
  double hi;
};

// Convergence control shared by root finding and ODE stepping. For the ODE
// solver abs_tol/rel_tol are local error tolerances and max_iter caps the
// number of attempted steps.
struct RootConfig {
  double abs_tol = 1e-15;
  double rel_tol = 2e-16;
  int max_iter = 300;
};

// Solution of psi'' = 2m (V - E) psi at one point.
struct RadialState {
  double x;
  std::complex<double> psi;
  std::complex<double> dpsi;
};

// Bracketing root finder: secant (Illinois) steps guarded by bisection.
// The returned point always lies inside [b.lo, b.hi].
double find_root(const RealFunction& f, Bracket b, const RootConfig& cfg = {});

// Sign-change scan on a uniform grid followed by find_root refinement.
// Candidates where |f| does not collapse (poles) are discarded. Roots closer
// than (hi - lo) / steps can be merged into one.
std::vector<double> scan_roots(const RealFunction& f, double lo, double hi, int steps,
                               const RootConfig& cfg = {});

// max(1e-4 |x|, 1e-6)
double default_step(double x) noexcept;

// Central five-point derivative, O(h^4).
double differentiate(const RealFunction& f, double x, double h);
double differentiate(const RealFunction& f, double x);

// Globally adaptive Gauss-Kronrod (7/15) quadrature to absolute tolerance
// `tol`. An infinite upper limit is mapped to (0, 1] with x = a - ln u.
double quad_adaptive(const RealFunction& f, double a, double b, double tol = 1e-12);

RootConfig default_ode_control() noexcept;

// Adaptive Dormand-Prince 5(4) integration of psi'' = 2 m (V(x) - E) psi from
// `from.x` to `x_end` (either direction).
RadialState ode_solve_radial(const RealFunction& potential, double energy, const RadialState& from,
                             double x_end, const RootConfig& step_ctrl = default_ode_control(),
                             double mass = 1.0);

struct PadeFit {
  double a0;
  double b2;                 // NaN when indeterminate
  bool b2_determinate;
};

// Least-squares fit of tan(delta) = -k a0 / (1 + b2 k^2) using the
// linearisation tan(delta) = -a0 k - b2 k^2 tan(delta).
PadeFit fit_pade_02(std::span<const std::pair<double, double>> samples);

}  // namespace contactqm::numerics
