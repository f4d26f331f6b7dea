#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace contactqm::cli {

enum class SystemKind { Coulomb, InvSquare, Free };
enum class Command { Spectrum, Scatter, Match, Delay, Table1, Consistency };
enum class Format { Csv, Json };

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  SystemKind system = SystemKind::Free;
  Command command = Command::Table1;
  std::map<std::string, std::string> parameters;
  Format format = Format::Csv;
  int jobs = 1;
  bool dump_config = false;
};

// Bad input from the user; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* to_string(SystemKind s);
const char* to_string(Command c);
const char* to_string(Format f);

// Parses `key = value` lines with '#' comments. Keys `system`, `command` and
// `format` select the run; everything else is a parameter.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// args excludes the program name. `file_text` is the content of --config, if any;
// command-line values override it.
RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::string>& file_text);

// Applies defaults and checks required keys and grids for (system, command).
void validate(RunConfig& cfg);

// The config in file syntax; parsing it back gives the same config.
std::string dump_config(const RunConfig& cfg);

std::string usage();

// Exit codes: 0 success, 2 config error, 3 numerical failure.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contactqm::cli
