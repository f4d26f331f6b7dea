#pragma once

#include <optional>
#include <span>
#include <vector>

// Free particle on x > 0 with a square well of depth V0 and width L.
namespace contactqm::freeparticle {

struct UV {
  double m;
  double V0;
  double L;
};

// chi(k^2) = a0 / (1 + b2 k^2)
struct Effective {
  double a0;
  double b2;

  double chi(double k2) const { return a0 / (1 + b2 * k2); }
};

struct BoundResult {
  double q;
  bool exact;  // false when q is the extremum of q chi(-q^2)
};

// tan(delta); +-infinity at phase poles.
double uv_tan_delta(const UV& uv, double k);
// delta in (-pi, pi], continuous in k away from branch cuts of atan2.
double uv_phase(const UV& uv, double k);
double uv_sin2delta(const UV& uv, double k);
double sin2delta_from_tan(double t);

std::vector<double> uv_bound_states(const UV& uv);

Effective pade_coeffs(const UV& uv);

double eff_tan_delta(const Effective& eff, double k);
double eff_phase(const Effective& eff, double k);
double eff_sin2delta(const Effective& eff, double k);

BoundResult eff_bound_state(const Effective& eff);

struct TableRow {
  double V0;
  double q_uv;
  std::optional<double> q_eff;
  std::optional<double> frac_err;
  bool exact;
};

inline constexpr double kTableV0[] = {1.3, 1.7, 2.1, 2.5, 2.9, 9.5, 12.0};

// Least-bound UV state against the effective prediction. The effective value
// is reported only when chi(-q^2) is pole-free on [0, q_uv].
TableRow table_row(double V0, double m = 1.0, double L = 1.0);
std::vector<TableRow> table1(std::span<const double> V0s = kTableV0, double m = 1.0, double L = 1.0);

}  // namespace contactqm::freeparticle
