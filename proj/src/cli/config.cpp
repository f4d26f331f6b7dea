#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "contactqm/cli.hpp"

namespace contactqm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

SystemKind parse_system(const std::string& s) {
  if (s == "coulomb") return SystemKind::Coulomb;
  if (s == "invsquare") return SystemKind::InvSquare;
  if (s == "free") return SystemKind::Free;
  throw ConfigError("unknown system '" + s + "' (expected coulomb, invsquare or free)");
}

Command parse_command(const std::string& s) {
  static const std::map<std::string, Command> names = {
      {"spectrum", Command::Spectrum}, {"scatter", Command::Scatter}, {"match", Command::Match},
      {"delay", Command::Delay},       {"table1", Command::Table1},   {"consistency", Command::Consistency}};
  const auto it = names.find(s);
  if (it == names.end()) throw ConfigError("unknown command '" + s + "'");
  return it->second;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

double number(const RunConfig& cfg, const std::string& key) {
  const std::string& v = cfg.parameters.at(key);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError("value of '" + key + "' is not a number: '" + v + "'");
  return x;
}

struct KeySpec {
  std::vector<std::string> required;
  std::map<std::string, std::string> defaults;
};

KeySpec key_spec(SystemKind sys, Command cmd) {
  KeySpec spec;
  spec.defaults["m"] = "1";
  switch (cmd) {
    case Command::Table1:
      spec.defaults["L"] = "1";
      return spec;
    case Command::Consistency:
      spec.defaults["a0"] = "0.3";
      spec.defaults["b2"] = "-0.02";
      spec.defaults["x_b"] = "0.1";
      spec.defaults["count"] = "4";
      spec.defaults["t"] = "0";
      spec.defaults["D"] = "";  // filled from x_b
      return spec;
    default:
      break;
  }
  switch (sys) {
    case SystemKind::Coulomb: spec.required = {"kappa", "L"}; break;
    case SystemKind::InvSquare: spec.required = {"alpha", "L"}; break;
    case SystemKind::Free: spec.required = {"V0", "L"}; break;
  }
  switch (cmd) {
    case Command::Spectrum:
      spec.defaults["n"] = sys == SystemKind::InvSquare ? "6" : "8";
      break;
    case Command::Scatter:
      spec.required.insert(spec.required.end(), {"kmin", "kmax"});
      spec.defaults["n"] = "200";
      break;
    case Command::Delay:
      spec.required.insert(spec.required.end(), {"Emin", "Emax"});
      spec.defaults["n"] = "200";
      break;
    default:
      break;
  }
  return spec;
}

void check_grid(const RunConfig& cfg, const std::string& lo, const std::string& hi) {
  const double a = number(cfg, lo), b = number(cfg, hi);
  if (!(b > a)) throw ConfigError("grid must be strictly increasing: " + lo + " < " + hi);
  const double n = number(cfg, "n");
  if (!(n >= 2) || n != std::floor(n)) throw ConfigError("grid size n must be an integer >= 2");
}

}  // namespace

const char* to_string(SystemKind s) {
  switch (s) {
    case SystemKind::Coulomb: return "coulomb";
    case SystemKind::InvSquare: return "invsquare";
    case SystemKind::Free: return "free";
  }
  return "?";
}

const char* to_string(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Scatter: return "scatter";
    case Command::Match: return "match";
    case Command::Delay: return "delay";
    case Command::Table1: return "table1";
    case Command::Consistency: return "consistency";
  }
  return "?";
}

const char* to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "missing key");
    if (value.empty()) throw ConfigError(where + "missing value for '" + key + "'");
    if (!out.emplace(key, value).second) throw ConfigError(where + "duplicate key '" + key + "'");
  }
  return out;
}

RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::string>& file_text) {
  CLI::App app{"contactqm"};
  std::string command, system, format, config_path;
  std::vector<std::string> positional;
  int jobs = 1;
  bool dump = false;
  app.add_option("args", positional);
  app.add_option("--system", system);
  app.add_option("--format", format);
  app.add_option("--config", config_path);
  app.add_option("--jobs", jobs);
  app.add_flag("--dump-config", dump);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  // The command is the one positional without '='; the rest are parameters.
  std::vector<std::string> kv;
  for (const std::string& item : positional) {
    if (item.find('=') != std::string::npos) {
      kv.push_back(item);
    } else if (command.empty()) {
      command = item;
    } else {
      throw ConfigError("more than one command: '" + command + "' and '" + item + "'");
    }
  }

  std::map<std::string, std::string> merged;
  std::optional<std::string> text = file_text;
  if (!text && !config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw ConfigError("cannot read config file '" + config_path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  if (text) merged = parse_config_text(*text);

  std::set<std::string> seen;
  for (const std::string& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw ConfigError("expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
    merged[key] = item.substr(eq + 1);
  }
  if (!command.empty()) merged["command"] = command;
  if (!system.empty()) merged["system"] = system;
  if (!format.empty()) merged["format"] = format;

  RunConfig cfg;
  const auto take = [&](const char* key) -> std::optional<std::string> {
    const auto it = merged.find(key);
    if (it == merged.end()) return std::nullopt;
    std::string v = it->second;
    merged.erase(it);
    return v;
  };
  const auto cmd = take("command");
  if (!cmd) throw ConfigError("no command given");
  cfg.command = parse_command(*cmd);
  if (const auto s = take("system")) {
    cfg.system = parse_system(*s);
  } else if (cfg.command != Command::Table1 && cfg.command != Command::Consistency) {
    throw ConfigError("--system is required for '" + *cmd + "'");
  }
  if (const auto f = take("format")) cfg.format = parse_format(*f);
  if (jobs < 1) throw ConfigError("--jobs must be at least 1");
  cfg.jobs = jobs;
  cfg.dump_config = dump;
  cfg.parameters = std::move(merged);
  validate(cfg);
  return cfg;
}

void validate(RunConfig& cfg) {
  const KeySpec spec = key_spec(cfg.system, cfg.command);
  for (const auto& [key, value] : cfg.parameters) {
    const bool known = std::find(spec.required.begin(), spec.required.end(), key) != spec.required.end() ||
                       spec.defaults.count(key) != 0;
    if (!known)
      throw ConfigError("unknown key '" + key + "' for " + to_string(cfg.system) + " " + to_string(cfg.command));
  }
  for (const std::string& key : spec.required)
    if (!cfg.parameters.count(key))
      throw ConfigError("missing required key '" + key + "' for " + std::string(to_string(cfg.command)));
  for (const auto& [key, value] : spec.defaults)
    if (!value.empty()) cfg.parameters.emplace(key, value);
  if (cfg.command == Command::Consistency && !cfg.parameters.count("D")) {
    std::ostringstream d;
    d.precision(17);
    d << 400 * number(cfg, "x_b");
    cfg.parameters["D"] = d.str();
  }
  for (const auto& [key, value] : cfg.parameters) number(cfg, key);

  const auto positive = [&](const char* key) {
    if (cfg.parameters.count(key) && !(number(cfg, key) > 0))
      throw ConfigError(std::string(key) + " must be positive");
  };
  for (const char* key : {"m", "L", "V0", "x_b", "count"}) positive(key);
  if (cfg.command == Command::Scatter) check_grid(cfg, "kmin", "kmax");
  if (cfg.command == Command::Delay) check_grid(cfg, "Emin", "Emax");
  if (cfg.command == Command::Scatter && !(number(cfg, "kmin") > 0)) throw ConfigError("kmin must be positive");
  if (cfg.command == Command::Delay && !(number(cfg, "Emin") > 0)) throw ConfigError("Emin must be positive");
  if (cfg.command == Command::Consistency) {
    if (!(number(cfg, "D") > number(cfg, "x_b"))) throw ConfigError("D must exceed x_b");
    if (number(cfg, "count") < 2) throw ConfigError("count must be at least 2");
  }
  if (cfg.command == Command::Spectrum && !(number(cfg, "n") >= 1)) throw ConfigError("n must be at least 1");
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "command = " << to_string(cfg.command) << '\n';
  out << "system = " << to_string(cfg.system) << '\n';
  out << "format = " << to_string(cfg.format) << '\n';
  for (const auto& [key, value] : cfg.parameters) out << key << " = " << value << '\n';
  return out.str();
}

std::string usage() {
  return "usage: contactqm <command> [--system coulomb|invsquare|free] [key=value ...]\n"
         "                 [--config FILE] [--format csv|json] [--jobs N] [--dump-config]\n"
         "\n"
         "commands:\n"
         "  spectrum     bound-state momenta, UV model against effective models\n"
         "  scatter      sin(2 delta) on a k grid (kmin, kmax, n)\n"
         "  match        matched effective parameters\n"
         "  delay        Wigner time delay on an energy grid (Emin, Emax, n)\n"
         "  table1       square-well ground states against the Pade effective model\n"
         "  consistency  boundary diagnostics for box modes (a0, b2, x_b, D, count, t)\n"
         "\n"
         "system parameters: coulomb kappa L m | invsquare alpha L m | free V0 L m\n"
         "config files hold 'key = value' lines; '#' starts a comment. Command-line values win.\n"
         "units: hbar = c = 1\n";
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << usage();
    return 2;
  }
  if (args.size() == 1 && (args[0] == "--help" || args[0] == "-h")) {
    out << usage();
    return 0;
  }
  RunConfig cfg;
  try {
    cfg = parse_config(args, std::nullopt);
  } catch (const ConfigError& e) {
    err << "contactqm: " << e.what() << '\n' << usage();
    return 2;
  }
  if (cfg.dump_config) {
    out << dump_config(cfg);
    return 0;
  }
  return run(cfg, out, err);
}

}  // namespace contactqm::cli
