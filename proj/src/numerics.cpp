#include "contactqm/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "contactqm/error.hpp"

namespace contactqm::numerics {

namespace {

bool same_sign(double a, double b) { return (a > 0 && b > 0) || (a < 0 && b < 0); }

}  // namespace

double find_root(const RealFunction& f, Bracket b, const RootConfig& cfg) {
  if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi))
    throw Error(ErrorCode::InvalidArgument, "bracket must satisfy lo < hi");
  double a = b.lo, c = b.hi;
  double fa = f(a), fc = f(c);
  if (std::isnan(fa) || std::isnan(fc))
    throw Error(ErrorCode::DomainViolation, "function is NaN at bracket end");
  if (fa == 0.0) return a;
  if (fc == 0.0) return c;
  if (same_sign(fa, fc)) throw Error(ErrorCode::NoSignChange, "no sign change in bracket");

  // Illinois weights live in ga/gc; fa/fc keep the true values.
  double ga = fa, gc = fc;
  int side = 0;
  int slow_steps = 0;
  double last_width = c - a;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double width = c - a;
    const double tol = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a), std::abs(c));
    const double mid = 0.5 * (a + c);
    if (width <= 2.0 * tol || mid <= a || mid >= c) return std::abs(fa) < std::abs(fc) ? a : c;

    double x = c - gc * (c - a) / (gc - ga);
    if (slow_steps >= 2 || !(x > a && x < c) || !std::isfinite(x)) {
      x = mid;
      slow_steps = 0;
    }
    const double fx = f(x);
    if (std::isnan(fx)) throw Error(ErrorCode::DomainViolation, "function is NaN inside bracket");
    if (fx == 0.0) return x;
    if (same_sign(fx, fa)) {
      a = x;
      fa = ga = fx;
      if (side == -1) gc *= 0.5;
      side = -1;
    } else {
      c = x;
      fc = gc = fx;
      if (side == 1) ga *= 0.5;
      side = 1;
    }
    const double new_width = c - a;
    slow_steps = new_width > 0.5 * last_width ? slow_steps + 1 : 0;
    last_width = new_width;
  }
  throw Error(ErrorCode::MaxIterExceeded, "root bracket did not converge");
}

std::vector<double> scan_roots(const RealFunction& f, double lo, double hi, int steps,
                               const RootConfig& cfg) {
  if (!(lo < hi) || steps < 1) throw Error(ErrorCode::InvalidArgument, "scan needs lo < hi and steps >= 1");
  const double dx = (hi - lo) / steps;
  std::vector<double> xs(static_cast<std::size_t>(steps) + 1);
  std::vector<double> fs(xs.size());
  for (int i = 0; i <= steps; ++i) {
    xs[i] = i == steps ? hi : lo + i * dx;
    fs[i] = f(xs[i]);
  }
  std::vector<double> roots;
  const auto push = [&](double r) {
    if (roots.empty() || r - roots.back() > 1e-9 * dx) roots.push_back(r);
  };
  for (int i = 0; i < steps; ++i) {
    const double f0 = fs[i], f1 = fs[i + 1];
    if (!std::isfinite(f0) || !std::isfinite(f1)) continue;
    if (f0 == 0.0) {
      push(xs[i]);
      continue;
    }
    if (f1 == 0.0 || !same_sign(f0, f1)) {
      if (f1 == 0.0) continue;  // picked up on the next interval
      const double r = find_root(f, {xs[i], xs[i + 1]}, cfg);
      const double fr = f(r);
      if (std::abs(fr) <= std::max(std::abs(f0), std::abs(f1))) push(r);
    }
  }
  if (fs[steps] == 0.0) push(xs[steps]);
  return roots;
}

double default_step(double x) noexcept { return std::max(1e-4 * std::abs(x), 1e-6); }

double differentiate(const RealFunction& f, double x, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::DomainViolation, "step must be positive");
  const double fm2 = f(x - 2 * h), fm1 = f(x - h), fp1 = f(x + h), fp2 = f(x + 2 * h);
  if (!std::isfinite(fm2) || !std::isfinite(fm1) || !std::isfinite(fp1) || !std::isfinite(fp2))
    throw Error(ErrorCode::DomainViolation, "non-finite value in difference stencil");
  return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
}

double differentiate(const RealFunction& f, double x) { return differentiate(f, x, default_step(x)); }

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const RealFunction& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kron *= h;
  gauss *= h;
  if (!std::isfinite(kron)) throw Error(ErrorCode::NonConvergent, "non-finite integrand");
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

double quad_adaptive(const RealFunction& f, double a, double b, double tol) {
  if (std::isinf(b) && b > 0) {
    if (!std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "lower limit must be finite");
    const RealFunction g = [&f, a](double u) {
      if (u <= 0.0) return 0.0;
      return f(a - std::log(u)) / u;
    };
    return quad_adaptive(g, 0.0, 1.0, tol);
  }
  if (!std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::InvalidArgument, "unsupported integration limits");
  if (a == b) return 0.0;
  if (b < a) return -quad_adaptive(f, b, a, tol);

  constexpr int max_segments = 5000;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  heap.push(first);
  double total = first.value, total_err = first.error;
  double abs_sum = std::abs(first.value);
  for (int n = 1; n < max_segments; ++n) {
    if (total_err <= std::max(tol, 50 * eps * abs_sum)) return total;
    Segment s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) {
      // Interval cannot be split further; accept it as is.
      total_err -= s.error;
      s.error = 0.0;
      heap.push(s);
      continue;
    }
    const Segment l = gk15(f, s.a, mid), r = gk15(f, mid, s.b);
    total += l.value + r.value - s.value;
    total_err += l.error + r.error - s.error;
    abs_sum += std::abs(l.value) + std::abs(r.value) - std::abs(s.value);
    heap.push(l);
    heap.push(r);
  }
  if (total_err <= std::max(tol, 50 * eps * abs_sum)) return total;
  throw Error(ErrorCode::NonConvergent, "quadrature error estimate above tolerance");
}

RootConfig default_ode_control() noexcept { return {1e-14, 1e-12, 2000000}; }

RadialState ode_solve_radial(const RealFunction& potential, double energy, const RadialState& from,
                             double x_end, const RootConfig& ctrl, double mass) {
  using C = std::complex<double>;
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidArgument, "mass must be positive");
  RadialState s = from;
  const double span = x_end - s.x;
  if (span == 0.0) return s;
  const double dir = span > 0 ? 1.0 : -1.0;

  struct Y {
    C p, d;
  };
  const auto rhs = [&](double x, const Y& y) -> Y {
    const double v = potential(x);
    if (!std::isfinite(v)) throw Error(ErrorCode::DomainViolation, "potential is not finite");
    return {y.d, 2.0 * mass * (v - energy) * y.p};
  };
  const auto axpy = [](const Y& y, double h, std::initializer_list<std::pair<double, const Y*>> terms) {
    Y r = y;
    for (const auto& [c, k] : terms) {
      r.p += h * c * k->p;
      r.d += h * c * k->d;
    }
    return r;
  };

  double h = dir * std::min(std::abs(span), 1e-3 * std::max(1.0, std::abs(span)));
  Y y{s.psi, s.dpsi};
  double x = s.x;
  Y k1 = rhs(x, y);
  for (int it = 0; it < ctrl.max_iter; ++it) {
    if (dir * (x_end - x) <= 0) break;
    if (dir * (x + h - x_end) > 0) h = x_end - x;
    const Y k2 = rhs(x + h / 5, axpy(y, h, {{1.0 / 5, &k1}}));
    const Y k3 = rhs(x + 3 * h / 10, axpy(y, h, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}));
    const Y k4 = rhs(x + 4 * h / 5, axpy(y, h, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}));
    const Y k5 = rhs(x + 8 * h / 9, axpy(y, h,
                                        {{19372.0 / 6561, &k1},
                                         {-25360.0 / 2187, &k2},
                                         {64448.0 / 6561, &k3},
                                         {-212.0 / 729, &k4}}));
    const Y k6 = rhs(x + h, axpy(y, h,
                                 {{9017.0 / 3168, &k1},
                                  {-355.0 / 33, &k2},
                                  {46732.0 / 5247, &k3},
                                  {49.0 / 176, &k4},
                                  {-5103.0 / 18656, &k5}}));
    const Y y5 = axpy(y, h,
                      {{35.0 / 384, &k1},
                       {500.0 / 1113, &k3},
                       {125.0 / 192, &k4},
                       {-2187.0 / 6784, &k5},
                       {11.0 / 84, &k6}});
    const Y k7 = rhs(x + h, y5);
    const Y y4 = axpy(y, h,
                      {{5179.0 / 57600, &k1},
                       {7571.0 / 16695, &k3},
                       {393.0 / 640, &k4},
                       {-92097.0 / 339200, &k5},
                       {187.0 / 2100, &k6},
                       {1.0 / 40, &k7}});
    const double sp = ctrl.abs_tol + ctrl.rel_tol * std::max(std::abs(y.p), std::abs(y5.p));
    const double sd = ctrl.abs_tol + ctrl.rel_tol * std::max(std::abs(y.d), std::abs(y5.d));
    const double err = std::max(std::abs(y5.p - y4.p) / sp, std::abs(y5.d - y4.d) / sd);
    if (!std::isfinite(err)) throw Error(ErrorCode::StepUnderflow, "non-finite local error");
    if (err <= 1.0) {
      x += h;
      y = y5;
      k1 = k7;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x)))
      throw Error(ErrorCode::StepUnderflow, "step size underflow");
  }
  if (dir * (x_end - x) > 0) throw Error(ErrorCode::MaxIterExceeded, "ODE step budget exhausted");
  return {x_end, y.p, y.d};
}

PadeFit fit_pade_02(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 4) throw Error(ErrorCode::DegenerateFit, "need at least four samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 0.0) || !std::isfinite(samples[i].second))
      throw Error(ErrorCode::DegenerateFit, "samples need k > 0 and finite tan(delta)");
    for (std::size_t j = 0; j < i; ++j)
      if (samples[i].first == samples[j].first)
        throw Error(ErrorCode::DegenerateFit, "duplicate k in samples");
  }
  const bool all_zero =
      std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.second == 0.0; });
  if (all_zero) return {0.0, std::numeric_limits<double>::quiet_NaN(), false};

  // Columns u = -k, v = -k^2 t; solve min |a0 u + b2 v - t| via Gram-Schmidt.
  const std::size_t n = samples.size();
  std::vector<double> u(n), v(n), t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [k, tv] = samples[i];
    u[i] = -k;
    v[i] = -k * k * tv;
    t[i] = tv;
  }
  const auto dot = [n](const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += p[i] * q[i];
    return s;
  };
  const double r11 = std::sqrt(dot(u, u));
  std::vector<double> q1(n);
  for (std::size_t i = 0; i < n; ++i) q1[i] = u[i] / r11;
  const double r12 = dot(q1, v);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = v[i] - r12 * q1[i];
  const double r22 = std::sqrt(dot(w, w));
  if (!(r22 > 1e-13 * std::sqrt(dot(v, v))))
    throw Error(ErrorCode::DegenerateFit, "design matrix is rank deficient");
  std::vector<double> q2(n);
  for (std::size_t i = 0; i < n; ++i) q2[i] = w[i] / r22;
  const double y1 = dot(q1, t), y2 = dot(q2, t);
  const double b2 = y2 / r22;
  const double a0 = (y1 - r12 * b2) / r11;
  return {a0, b2, true};
}

}  // namespace contactqm::numerics
