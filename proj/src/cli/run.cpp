#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "contactqm/cli.hpp"
#include "contactqm/consistency.hpp"
#include "contactqm/coulomb.hpp"
#include "contactqm/error.hpp"
#include "contactqm/freeparticle.hpp"
#include "contactqm/invsquare.hpp"
#include "contactqm/sweep.hpp"
#include "contactqm/timedelay.hpp"

namespace contactqm::cli {

namespace {

using Cell = std::variant<std::monostate, double, long long, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  nlohmann::ordered_json extra_meta = nlohmann::ordered_json::object();
};

double num(const RunConfig& cfg, const char* key) { return std::stod(cfg.parameters.at(key)); }
int count(const RunConfig& cfg, const char* key) { return static_cast<int>(std::lround(num(cfg, key))); }

Cell opt(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

std::string csv_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    // Shortest text that reads back to the same double.
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, *d);
    return std::string(buf, r.ptr);
  }
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const std::string* s = std::get_if<std::string>(&c)) return *s;
  return "";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? nlohmann::ordered_json(*d) : nullptr;
  if (const long long* i = std::get_if<long long>(&c)) return *i;
  if (const std::string* s = std::get_if<std::string>(&c)) return *s;
  return nullptr;
}

void write(const Table& t, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == Format::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const Row& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  config["command"] = to_string(cfg.command);
  config["system"] = to_string(cfg.system);
  for (const auto& [k, v] : cfg.parameters) config[k] = v;
  nlohmann::ordered_json meta = {{"units", "hbar = c = 1"}, {"version", kVersion}, {"config", config}};
  for (const auto& [k, v] : t.extra_meta.items()) meta[k] = v;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Row& r : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < r.size(); ++i) obj[t.columns[i]] = json_cell(r[i]);
    rows.push_back(std::move(obj));
  }
  out << nlohmann::ordered_json{{"meta", meta}, {"rows", rows}}.dump(2) << '\n';
}

std::vector<Row> grid_rows(const RunConfig& cfg, const char* lo, const char* hi,
                           const std::function<Row(double)>& row) {
  const auto grid = sweep::linspace(num(cfg, lo), num(cfg, hi), static_cast<std::size_t>(count(cfg, "n")));
  return sweep::map<Row>(grid.size(), [&](std::size_t i) { return row(grid[i]); }, cfg.jobs);
}

double rel_energy_error(double q, double q_ref) { return std::abs(q * q - q_ref * q_ref) / (q_ref * q_ref); }

// Phase of S = exp(2 i delta), reduced to delta.
double half_arg(std::complex<double> s) { return 0.5 * std::arg(s); }

// ---- coulomb

coulomb::UV coulomb_uv(const RunConfig& cfg) { return {{num(cfg, "kappa"), num(cfg, "m")}, num(cfg, "L")}; }

Table coulomb_spectrum(const RunConfig& cfg) {
  const coulomb::UV uv = coulomb_uv(cfg);
  const coulomb::System& s = uv.system;
  const coulomb::Effective nlo = coulomb::match_effective(uv);
  const coulomb::Effective lo{nlo.b0, nlo.c0, 0.0};
  const int n = count(cfg, "n");
  const auto tower = coulomb::uv_bound_tower(uv, n);
  Table t;
  t.columns = {"n",      "q_uv",          "q_canonical", "q_lo",   "q_nlo",  "q_eff_exact",
               "err_canonical", "err_lo",  "err_nlo",     "err_eff_exact"};
  t.rows = sweep::map<Row>(static_cast<std::size_t>(n), [&](std::size_t i) {
    const int nt = static_cast<int>(i) + 1;
    const double qu = tower[i];
    const double qc = coulomb::canonical_bound_q(s, nt);
    const double ql = coulomb::effective_bound_q_ritz(s, lo, nt);
    const double qn = coulomb::effective_bound_q_ritz(s, nlo, nt);
    const double qe = coulomb::effective_bound_q_exact(s, nlo, nt);
    return Row{static_cast<long long>(nt), qu, qc, ql, qn, qe, rel_energy_error(qc, qu),
               rel_energy_error(ql, qu), rel_energy_error(qn, qu), rel_energy_error(qe, qu)};
  }, cfg.jobs);
  t.extra_meta["error_measure"] = "|E - E_uv| / |E_uv|";
  return t;
}

Table coulomb_scatter(const RunConfig& cfg) {
  const coulomb::UV uv = coulomb_uv(cfg);
  const coulomb::Effective nlo = coulomb::match_effective(uv);
  const coulomb::Effective lo{nlo.b0, nlo.c0, 0.0};
  Table t;
  t.columns = {"k", "sin2delta_uv", "sin2delta_lo", "sin2delta_nlo"};
  t.rows = grid_rows(cfg, "kmin", "kmax", [&](double k) {
    return Row{k, coulomb::uv_phase_factor(uv, k).imag(), coulomb::effective_phase_factor(uv.system, lo, k).imag(),
               coulomb::effective_phase_factor(uv.system, nlo, k).imag()};
  });
  return t;
}

Table coulomb_match(const RunConfig& cfg) {
  const coulomb::UV uv = coulomb_uv(cfg);
  const coulomb::Effective e = coulomb::match_effective(uv);
  const coulomb::DefectExpansion d = coulomb::defect_expansion(uv.system, e);
  Table t;
  t.columns = {"b0", "c0", "c2", "delta0", "delta2"};
  t.rows.push_back({e.b0, e.c0, e.c2, d.delta0, d.delta2});
  return t;
}

// ---- inverse square

invsquare::UV invsquare_uv(const RunConfig& cfg) {
  return {invsquare::System::from_alpha(num(cfg, "alpha"), num(cfg, "m")), num(cfg, "L")};
}

Table invsquare_spectrum(const RunConfig& cfg) {
  const invsquare::UV uv = invsquare_uv(cfg);
  const invsquare::Effective eff = invsquare::match_effective(uv);
  const int top = invsquare::uv_top_level(uv);
  Table t;
  t.columns = {"n", "q_uv_exact", "q_uv_pert", "q_lo", "q_nlo", "ratio_pert", "ratio_lo", "ratio_nlo", "in_window"};
  t.rows = sweep::map<Row>(static_cast<std::size_t>(count(cfg, "n")), [&](std::size_t i) {
    const int level = top - static_cast<int>(i);
    const double qx = invsquare::uv_bound_q_exact(uv, level);
    const double qp = invsquare::uv_bound_q_perturbative(uv, level);
    const invsquare::WindowedMomentum lo = invsquare::lo_bound_q(eff, uv.system, level, uv.L);
    const double qn = invsquare::nlo_bound_q(eff, uv.system, level);
    return Row{static_cast<long long>(level), qx, qp, lo.q, qn, qp / qx, lo.q / qx, qn / qx,
               static_cast<long long>(lo.in_window)};
  }, cfg.jobs);
  t.extra_meta["top_level"] = top;
  return t;
}

Table invsquare_scatter(const RunConfig& cfg) {
  const invsquare::UV uv = invsquare_uv(cfg);
  const invsquare::Effective eff = invsquare::match_effective(uv);
  Table t;
  t.columns = {"k", "sin2delta_uv", "sin2delta_lo", "sin2delta_nlo"};
  t.rows = grid_rows(cfg, "kmin", "kmax", [&](double k) {
    return Row{k, invsquare::uv_phase_factor(uv, k).imag(), invsquare::lo_phase_factor(eff.b0, uv.system, k).imag(),
               invsquare::nlo_phase_factor(eff, uv.system, k).imag()};
  });
  return t;
}

Table invsquare_match(const RunConfig& cfg) {
  const invsquare::UV uv = invsquare_uv(cfg);
  const invsquare::UVConstants c = invsquare::uv_constants(uv.system);
  const invsquare::Effective e = invsquare::match_effective(uv);
  Table t;
  t.columns = {"g", "A", "B", "C", "D", "f_alpha", "arctan_CA", "b0", "c2", "top_level"};
  t.rows.push_back({uv.system.g(), c.A, c.B, c.C, c.D, c.f_alpha, c.arctan_CA, e.b0, e.c2,
                    static_cast<long long>(invsquare::uv_top_level(uv))});
  return t;
}

// ---- free particle

freeparticle::UV free_uv(const RunConfig& cfg) { return {num(cfg, "m"), num(cfg, "V0"), num(cfg, "L")}; }

Table free_spectrum(const RunConfig& cfg) {
  const freeparticle::UV uv = free_uv(cfg);
  const auto states = freeparticle::uv_bound_states(uv);
  std::optional<freeparticle::BoundResult> eff;
  try {
    eff = freeparticle::eff_bound_state(freeparticle::pade_coeffs(uv));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoCandidate) throw;
  }
  Table t;
  t.columns = {"n", "q_uv", "q_eff", "eff_exact"};
  for (std::size_t i = 0; i < states.size(); ++i) {
    Row r{static_cast<long long>(i), states[i], Cell{}, Cell{}};
    if (i == 0 && eff) {
      r[2] = eff->q;
      r[3] = static_cast<long long>(eff->exact);
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

Table free_scatter(const RunConfig& cfg) {
  const freeparticle::UV uv = free_uv(cfg);
  const freeparticle::Effective eff = freeparticle::pade_coeffs(uv);
  Table t;
  t.columns = {"k", "sin2delta_uv", "sin2delta_eff"};
  t.rows = grid_rows(cfg, "kmin", "kmax", [&](double k) {
    return Row{k, freeparticle::uv_sin2delta(uv, k), freeparticle::eff_sin2delta(eff, k)};
  });
  return t;
}

Table free_match(const RunConfig& cfg) {
  const freeparticle::UV uv = free_uv(cfg);
  const freeparticle::Effective e = freeparticle::pade_coeffs(uv);
  Table t;
  t.columns = {"a0", "b2", "width_ratio", "E_r", "Gamma"};
  Row r{e.a0, e.b2, std::abs(e.a0) / std::sqrt(std::abs(e.b2)), Cell{}, Cell{}};
  if (e.b2 < 0) {
    const timedelay::ResonanceParams res = timedelay::resonance_params(e, uv.m);
    r[3] = res.E_r;
    r[4] = res.Gamma;
  }
  t.rows.push_back(std::move(r));
  return t;
}

Table table1(const RunConfig& cfg) {
  Table t;
  t.columns = {"V0", "q_uv", "q_eff", "frac_err"};
  const double m = num(cfg, "m"), L = num(cfg, "L");
  const std::span<const double> v0s(freeparticle::kTableV0);
  t.rows = sweep::map<Row>(v0s.size(), [&](std::size_t i) {
    const freeparticle::TableRow r = freeparticle::table_row(v0s[i], m, L);
    return Row{r.V0, r.q_uv, opt(r.q_eff), opt(r.frac_err)};
  }, cfg.jobs);
  return t;
}

// ---- time delay

Table delay(const RunConfig& cfg) {
  const double m = num(cfg, "m");
  const auto k_of = [m](double E) { return std::sqrt(2 * m * E); };
  Table t;
  switch (cfg.system) {
    case SystemKind::Free: {
      const freeparticle::UV uv = free_uv(cfg);
      const freeparticle::Effective eff = freeparticle::pade_coeffs(uv);
      std::optional<timedelay::ResonanceParams> res;
      if (eff.b2 < 0) {
        res = timedelay::resonance_params(eff, m);
        t.extra_meta["E_r"] = res->E_r;
        t.extra_meta["Gamma"] = res->Gamma;
      }
      t.columns = {"E", "tau_uv", "tau_eff", "tau_lorentzian"};
      t.rows = grid_rows(cfg, "Emin", "Emax", [&](double E) {
        const double tu = timedelay::wigner_delay([&](double e) { return freeparticle::uv_phase(uv, k_of(e)); }, E);
        const double te = timedelay::wigner_delay([&](double e) { return freeparticle::eff_phase(eff, k_of(e)); }, E);
        return Row{E, tu, te, res ? Cell{timedelay::lorentzian_delay(E, *res)} : Cell{}};
      });
      return t;
    }
    case SystemKind::Coulomb: {
      const coulomb::UV uv = coulomb_uv(cfg);
      const coulomb::Effective nlo = coulomb::match_effective(uv);
      const coulomb::Effective lo{nlo.b0, nlo.c0, 0.0};
      t.columns = {"E", "tau_uv", "tau_lo", "tau_nlo"};
      t.rows = grid_rows(cfg, "Emin", "Emax", [&](double E) {
        const auto tau = [&](const std::function<std::complex<double>(double)>& S) {
          return timedelay::wigner_delay([&](double e) { return half_arg(S(k_of(e))); }, E);
        };
        return Row{E, tau([&](double k) { return coulomb::uv_phase_factor(uv, k); }),
                   tau([&](double k) { return coulomb::effective_phase_factor(uv.system, lo, k); }),
                   tau([&](double k) { return coulomb::effective_phase_factor(uv.system, nlo, k); })};
      });
      return t;
    }
    case SystemKind::InvSquare: {
      const invsquare::UV uv = invsquare_uv(cfg);
      const invsquare::Effective eff = invsquare::match_effective(uv);
      t.columns = {"E", "tau_uv", "tau_lo", "tau_nlo"};
      t.rows = grid_rows(cfg, "Emin", "Emax", [&](double E) {
        const auto tau = [&](const std::function<std::complex<double>(double)>& S) {
          return timedelay::wigner_delay([&](double e) { return half_arg(S(k_of(e))); }, E);
        };
        return Row{E, tau([&](double k) { return invsquare::uv_phase_factor(uv, k); }),
                   tau([&](double k) { return invsquare::lo_phase_factor(eff.b0, uv.system, k); }),
                   tau([&](double k) { return invsquare::nlo_phase_factor(eff, uv.system, k); })};
      });
      return t;
    }
  }
  return t;
}

// ---- boundary diagnostics

Table consistency_table(const RunConfig& cfg) {
  const double a0 = num(cfg, "a0"), b2 = num(cfg, "b2"), time = num(cfg, "t");
  const consistency::BoxConfig box{num(cfg, "x_b"), num(cfg, "D"), num(cfg, "m")};
  const auto modes = consistency::solve_box_modes([&](double k2) { return a0 / (1 + b2 * k2); }, box, count(cfg, "count"));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = i + 1; j < modes.size(); ++j) pairs.emplace_back(i, j);
  Table t;
  t.columns = {"i",          "j",          "k_i",         "k_j",         "Z_i",        "Z_j",
               "defect_re",  "defect_im",  "defect_quad_re", "defect_quad_im", "overlap_re", "overlap_im",
               "overlap_quad_re", "overlap_quad_im", "drift_amplitude", "drift_average"};
  t.rows = sweep::map<Row>(pairs.size(), [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const auto& a = modes[i];
    const auto& b = modes[j];
    const auto d = consistency::hermiticity_defect(a, b, time, box);
    const auto dq = consistency::hermiticity_defect_quadrature(a, b, time, box);
    const auto o = consistency::overlap(a, b, time, box);
    const auto oq = consistency::overlap_quadrature(a, b, time, box);
    const double c = 1 / std::numbers::sqrt2;
    const consistency::Superposition s{{{i, c}, {j, c}}};
    const auto dp = consistency::drift_parameters(s, modes, box);
    const double period = 2 * std::numbers::pi / std::abs(a.E - b.E);
    const double avg = consistency::time_average(
        [&](double tt) { return consistency::norm_drift_rate(s, modes, tt, box); }, period, time);
    return Row{static_cast<long long>(i), static_cast<long long>(j), a.k, b.k, a.Z, b.Z, d.real(), d.imag(),
               dq.real(), dq.imag(), o.real(), o.imag(), oq.real(), oq.imag(), dp.rho * std::abs(dp.dZ), avg};
  }, cfg.jobs);
  return t;
}

Table build(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Table1: return table1(cfg);
    case Command::Consistency: return consistency_table(cfg);
    case Command::Delay: return delay(cfg);
    default: break;
  }
  switch (cfg.system) {
    case SystemKind::Coulomb:
      if (cfg.command == Command::Spectrum) return coulomb_spectrum(cfg);
      if (cfg.command == Command::Scatter) return coulomb_scatter(cfg);
      return coulomb_match(cfg);
    case SystemKind::InvSquare:
      if (cfg.command == Command::Spectrum) return invsquare_spectrum(cfg);
      if (cfg.command == Command::Scatter) return invsquare_scatter(cfg);
      return invsquare_match(cfg);
    case SystemKind::Free:
      if (cfg.command == Command::Spectrum) return free_spectrum(cfg);
      if (cfg.command == Command::Scatter) return free_scatter(cfg);
      return free_match(cfg);
  }
  return {};
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Table t;
  try {
    t = build(cfg);
  } catch (const Error& e) {
    const nlohmann::ordered_json diag = {{"status", "numerical_failure"},
                                         {"code", contactqm::to_string(e.code())},
                                         {"message", e.what()},
                                         {"command", to_string(cfg.command)},
                                         {"system", to_string(cfg.system)}};
    err << diag.dump() << '\n';
    return 3;
  }
  write(t, cfg, out);
  return 0;
}

}  // namespace contactqm::cli
