#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "contactqm/cli.hpp"
#include "contactqm/freeparticle.hpp"

using namespace contactqm;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

const char* kFig2Config =
    "# Coulomb scattering with a wide step\n"
    "command = scatter\n"
    "system = coulomb\n"
    "kappa = -1\n"
    "L = 0.9   # regulator width\n"
    "kmin = 0.05\n"
    "kmax = 7.5\n"
    "n = 300\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage and config errors exit with 2") {
  const Result empty = run({});
  CHECK(empty.code == 2);
  CHECK(empty.err.find("usage:") != std::string::npos);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"scatter", "--system", "coulomb", "kappa=-1", "L=0.11", "kmin=0.05"}).code == 2);
  CHECK(run({"scatter", "--system", "coulomb", "kappa=-1", "L=0.11", "kmin=2", "kmax=1"}).code == 2);
  CHECK(run({"table1", "--format", "xml"}).code == 2);
  CHECK(run({"table1", "--jobs", "0"}).code == 2);
  const Result dup = run({"match", "--system", "coulomb", "kappa=-1", "kappa=-2", "L=0.1"});
  CHECK(dup.code == 2);
  CHECK(dup.err.find("'kappa'") != std::string::npos);
  const Result unk = run({"match", "--system", "coulomb", "kappa=-1", "L=0.1", "alpha=2"});
  CHECK(unk.code == 2);
  CHECK(unk.err.find("'alpha'") != std::string::npos);
  CHECK(run({"match", "--system", "coulomb", "kappa=abc", "L=0.1"}).code == 2);
}

TEST_CASE("config file parsing") {
  const auto kv = cli::parse_config_text(kFig2Config);
  CHECK(kv.at("L") == "0.9");
  CHECK(kv.size() == 7);
  try {
    cli::parse_config_text("kappa = -1\n\nkappa = -2\n");
    FAIL("duplicate accepted");
  } catch (const cli::ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("'kappa'") != std::string::npos);
  }
  CHECK_THROWS_AS(cli::parse_config_text("just words\n"), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_config_text("key =\n"), cli::ConfigError);
  // Command line wins over the file.
  const cli::RunConfig cfg = cli::parse_config({"L=0.11"}, std::string(kFig2Config));
  CHECK(cfg.parameters.at("L") == "0.11");
  CHECK(cfg.command == cli::Command::Scatter);
  CHECK(cfg.system == cli::SystemKind::Coulomb);
}

TEST_CASE("dump-config round trip") {
  const cli::RunConfig a = cli::parse_config({"--dump-config"}, std::string(kFig2Config));
  const std::string dumped = cli::dump_config(a);
  const cli::RunConfig b = cli::parse_config({}, dumped);
  CHECK(cli::dump_config(b) == dumped);
  CHECK(b.parameters == a.parameters);
  // The dump of a command line run reproduces the same output.
  const Result direct = run({"scatter", "--system", "coulomb", "kappa=-1", "L=0.9", "kmin=0.05", "kmax=7.5", "n=20"});
  const cli::RunConfig c = cli::parse_config({"scatter", "--system", "coulomb", "kappa=-1", "L=0.9", "kmin=0.05",
                                              "kmax=7.5", "n=20"}, std::nullopt);
  std::ostringstream out, err;
  CHECK(cli::run(cli::parse_config({}, cli::dump_config(c)), out, err) == 0);
  CHECK(out.str() == direct.out);
}

TEST_CASE("table1 output") {
  const Result r = run({"table1"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 8);
  CHECK(ls[0] == "V0,q_uv,q_eff,frac_err");
  CHECK(ls[1].rfind("1.3,0.06503382", 0) == 0);
  CHECK(ls[6].size() > 4);
  CHECK(ls[6].substr(ls[6].size() - 2) == ",,");
}

TEST_CASE("CSV numbers read back bit for bit") {
  const Result r = run({"table1"});
  REQUIRE(r.code == 0);
  const auto rows = freeparticle::table1();
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == rows.size() + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::istringstream in(ls[i + 1]);
    std::string v0, q;
    std::getline(in, v0, ',');
    std::getline(in, q, ',');
    CHECK(std::stod(v0) == rows[i].V0);
    CHECK(std::stod(q) == rows[i].q_uv);
  }
}

TEST_CASE("coulomb scatter output on a 300-point grid") {
  const Result r = run({"scatter", "--system", "coulomb", "kappa=-1", "L=0.11", "kmin=0.05", "kmax=7.5", "n=300"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 301);
  CHECK(ls[0] == "k,sin2delta_uv,sin2delta_lo,sin2delta_nlo");
  CHECK(ls[1].rfind("0.05,", 0) == 0);
}

TEST_CASE("invsquare spectrum rows") {
  const Result r = run({"spectrum", "--system", "invsquare", "alpha=1.5", "L=1", "n=6"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 7);
  CHECK(ls[0].rfind("n,q_uv_exact,q_uv_pert,q_lo,q_nlo", 0) == 0);
}

TEST_CASE("JSON output") {
  const Result r = run({"table1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("meta").at("units") == "hbar = c = 1");
  CHECK(j.at("meta").at("version") == cli::kVersion);
  CHECK(j.at("meta").at("config").at("command") == "table1");
  REQUIRE(j.at("rows").size() == 7);
  CHECK(j.at("rows")[5].at("q_eff").is_null());
  CHECK(j.at("rows")[0].at("q_uv").get<double>() == doctest::Approx(0.0650338).epsilon(1e-6));
}

TEST_CASE("determinism and job independence") {
  const std::vector<std::string> args{"scatter", "--system", "invsquare", "alpha=1.5", "L=1", "kmin=0.05", "kmax=3", "n=40"};
  const Result a = run(args), b = run(args);
  CHECK(a.out == b.out);
  auto par = args;
  par.insert(par.end(), {"--jobs", "4"});
  CHECK(run(par).out == a.out);
}

TEST_CASE("numerical failures exit with 3 and a diagnostic record") {
  const Result r = run({"spectrum", "--system", "coulomb", "kappa=1", "L=0.11"});
  CHECK(r.code == 3);
  const auto j = nlohmann::json::parse(r.err);
  CHECK(j.at("status") == "numerical_failure");
  CHECK(j.at("code") == "PositiveKappa");
}

TEST_CASE("every command runs") {
  CHECK(run({"match", "--system", "coulomb", "kappa=-1", "L=0.11"}).code == 0);
  CHECK(run({"match", "--system", "invsquare", "alpha=1.5", "L=1"}).code == 0);
  CHECK(run({"match", "--system", "free", "V0=9.5", "L=1"}).code == 0);
  CHECK(run({"spectrum", "--system", "free", "V0=12", "L=1"}).code == 0);
  CHECK(run({"spectrum", "--system", "coulomb", "kappa=-1", "L=0.11", "n=3"}).code == 0);
  CHECK(run({"scatter", "--system", "free", "V0=9.5", "L=1", "kmin=0.1", "kmax=5", "n=10"}).code == 0);
  CHECK(run({"delay", "--system", "free", "V0=10.15", "L=1", "Emin=0.1", "Emax=0.3", "n=10"}).code == 0);
  CHECK(run({"delay", "--system", "coulomb", "kappa=-1", "L=0.11", "Emin=0.1", "Emax=2", "n=5"}).code == 0);
  CHECK(run({"delay", "--system", "invsquare", "alpha=1.5", "L=1", "Emin=0.01", "Emax=1", "n=5"}).code == 0);
  const Result c = run({"consistency", "count=3"});
  CHECK(c.code == 0);
  CHECK(lines(c.out).size() == 4);
}

}
