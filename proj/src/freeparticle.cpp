#include "contactqm/freeparticle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "contactqm/error.hpp"
#include "contactqm/numerics.hpp"

namespace contactqm::freeparticle {

namespace {

void check(const UV& uv) {
  if (!(uv.m > 0) || !(uv.V0 > 0) || !(uv.L > 0))
    throw Error(ErrorCode::InvalidArgument, "m, V0 and L must be positive");
}

double depth_momentum(const UV& uv) { return std::sqrt(2 * uv.m * uv.V0); }

}  // namespace

double uv_tan_delta(const UV& uv, double k) {
  check(uv);
  if (!(k > 0)) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  const double p = std::sqrt(k * k + 2 * uv.m * uv.V0);
  const double tp = std::tan(p * uv.L), tk = std::tan(k * uv.L);
  const double num = k * tp - p * tk;
  const double den = p + k * tk * tp;
  if (den == 0.0) return num >= 0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
  return num / den;
}

double uv_phase(const UV& uv, double k) {
  check(uv);
  if (!(k > 0)) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  const double p = std::sqrt(k * k + 2 * uv.m * uv.V0);
  // tan(kL + delta) = (k/p) tan(pL), written without poles.
  double d = std::atan2(k * std::sin(p * uv.L), p * std::cos(p * uv.L)) - k * uv.L;
  d = std::remainder(d, 2 * std::numbers::pi);
  return d;
}

double uv_sin2delta(const UV& uv, double k) { return std::sin(2 * uv_phase(uv, k)); }

double sin2delta_from_tan(double t) {
  if (std::isinf(t)) return 0.0;
  return 2 * t / (1 + t * t);
}

std::vector<double> uv_bound_states(const UV& uv) {
  check(uv);
  const double Q = depth_momentum(uv), L = uv.L;
  // -q = p cot(pL), multiplied through by sin(pL)/p so it has no poles.
  const auto G = [&](double p) {
    const double q = std::sqrt(std::max(Q * Q - p * p, 0.0));
    const double x = p * L;
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    return q * L * sinc + std::cos(x);
  };
  const int steps = std::max(200, 50 * static_cast<int>(std::ceil(Q * L / std::numbers::pi)));
  std::vector<double> qs;
  for (double p : numerics::scan_roots(G, 0.0, Q, steps)) {
    const double q = std::sqrt(std::max(Q * Q - p * p, 0.0));
    if (q > 0) qs.push_back(q);
  }
  std::sort(qs.begin(), qs.end());
  return qs;
}

Effective pade_coeffs(const UV& uv) {
  check(uv);
  const double m = uv.m, V0 = uv.V0, L = uv.L;
  const double Q = depth_momentum(uv);
  const double x = L * Q;
  const double s = std::sin(x), c = std::cos(x);
  if (std::abs(c) < 1e-12 || std::abs(s) < 1e-12)
    throw Error(ErrorCode::CoefficientPole, "L sqrt(2 m V0) sits on a pole of the coefficients");
  const double t = s / c, ct = c / s;
  const double a0 = L - t / Q;
  const double den = 12 * m * V0 * (x * ct - 1);
  if (std::abs(den) < 1e-12 * 12 * m * V0)
    throw Error(ErrorCode::CoefficientPole, "b2 denominator vanishes");
  const double num = 12 * L * L * m * V0 + x * t * ((3 - 4 * L * L * m * V0) * ct * ct - 3) - 3;
  return {a0, num / den};
}

double eff_tan_delta(const Effective& eff, double k) {
  const double den = 1 + eff.b2 * k * k;
  const double num = -k * eff.a0;
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    return num > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return num / den;
}

double eff_phase(const Effective& eff, double k) {
  return std::atan2(-k * eff.a0, 1 + eff.b2 * k * k);
}

double eff_sin2delta(const Effective& eff, double k) { return std::sin(2 * eff_phase(eff, k)); }

BoundResult eff_bound_state(const Effective& eff) {
  const double a0 = eff.a0, b2 = eff.b2;
  if (a0 == 0.0) throw Error(ErrorCode::NoCandidate, "a0 = 0");
  if (b2 == 0.0) {
    if (a0 > 0) return {1 / a0, true};
    throw Error(ErrorCode::NoCandidate, "a0 < 0 has no bound state at LO");
  }
  const double disc = a0 * a0 + 4 * b2;
  if (disc >= 0) {
    // Root continuous with the LO value 1/a0 as b2 -> 0.
    const double s = a0 + std::sqrt(disc);
    if (s > 0) return {2 / s, true};
  }
  if (b2 < 0 && a0 > 0) {
    // Best approximation: maximum of q chi(-q^2) on (0, 10/a0].
    const auto h = [&](double q) { return q * a0 / (1 - b2 * q * q); };
    double lo = 0.0, hi = 10.0 / a0;
    const double r = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = h(x1), f2 = h(x2);
    while (hi - lo > 1e-13 * hi) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + r * (hi - lo);
        f2 = h(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - r * (hi - lo);
        f1 = h(x1);
      }
    }
    const double q = 0.5 * (lo + hi);
    // An endpoint maximum is not a local extremum.
    if (q < 10.0 / a0 * (1 - 1e-9)) return {q, false};
  }
  throw Error(ErrorCode::NoCandidate, "no positive root and no local extremum");
}

TableRow table_row(double V0, double m, double L) {
  const UV uv{m, V0, L};
  const auto states = uv_bound_states(uv);
  if (states.empty()) throw Error(ErrorCode::NoCandidate, "UV model has no bound state");
  TableRow row{V0, states.front(), std::nullopt, std::nullopt, false};
  const Effective eff = pade_coeffs(uv);
  try {
    const BoundResult r = eff_bound_state(eff);
    const bool pole_free = !(eff.b2 > 0) || 1 / std::sqrt(eff.b2) > row.q_uv;
    if (pole_free) {
      row.q_eff = r.q;
      row.frac_err = std::abs(r.q - row.q_uv) / row.q_uv;
      row.exact = r.exact;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoCandidate) throw;
  }
  return row;
}

std::vector<TableRow> table1(std::span<const double> V0s, double m, double L) {
  std::vector<TableRow> rows;
  for (double v : V0s) rows.push_back(table_row(v, m, L));
  return rows;
}

}  // namespace contactqm::freeparticle
