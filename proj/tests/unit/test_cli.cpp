#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "gslab/cli/config.hpp"
#include "gslab/cli/io.hpp"
#include "gslab/cli/report.hpp"
#include "gslab/cli/run.hpp"
#include "gslab/cli/svg.hpp"
#include "gslab/profile.hpp"
#include "gslab/shooting.hpp"
#include "gslab/spectrum.hpp"
#include "support.hpp"

using namespace gslab;
using namespace gslab::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gslab_unit_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "gslab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 2.872310722160151, 1e-300, -5e-7, 12345678.9}) {
    const std::string s = format_number(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
  CHECK(num(NAN) == Json("nan"));
  CHECK(num(0.5) == Json(0.5));
}

TEST_CASE("profile CSV round trip is exact") {
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 1.0, 3.0));
  const RadialProfile prof = solve_ground_state(par);
  const std::string text = profile_csv(prof);
  std::istringstream in(text);
  const RadialProfile back = parse_profile_csv(in);
  REQUIRE(back.size() == prof.size());
  for (std::size_t i = 0; i < prof.size(); ++i) {
    CHECK(back.grid()[i] == prof.grid()[i]);
    CHECK(back.values()[i] == prof.values()[i]);
    CHECK(back.derivs()[i] == prof.derivs()[i]);
  }
  CHECK(back.phi0() == prof.phi0());
  CHECK(back.tail()->rate == prof.tail()->rate);
  CHECK(back.params().omega0 == par.omega0);
  CHECK(profile_csv(back) == text);
}

TEST_CASE("profile CSV errors") {
  const RadialProfile prof = soliton_1d(1.0, 3.0);
  const std::string text = profile_csv(prof);
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_profile_csv(in);
  };
  CHECK_NOTHROW(parse(text));
  CHECK_ERRC(parse(replace(text, "# schema=gslab/1", "# schema=other/2")), Errc::SchemaMismatch);
  CHECK_ERRC(parse(replace(text, "# phi0=", "# phi_zero=")), Errc::SchemaMismatch);
  CHECK_ERRC(parse(replace(text, "# tail_rate=", "# rate=")), Errc::SchemaMismatch);
  CHECK_ERRC(parse(replace(text, "r,phi,dphi", "x,y")), Errc::SchemaMismatch);
  // swap two grid values so the grid stops increasing
  std::istringstream lines(text);
  std::vector<std::string> rows;
  for (std::string l; std::getline(lines, l);) rows.push_back(l);
  std::size_t first = 0;
  while (rows[first] != "r,phi,dphi") ++first;
  std::swap(rows[first + 5], rows[first + 6]);
  std::string swapped;
  for (const auto& r : rows) swapped += r + "\n";
  CHECK_ERRC(parse(swapped), Errc::InvariantViolation);
}

TEST_CASE("config parsing is strict") {
  RunConfig c;
  c.command = Command::Spectrum;
  c.params = {2, 1.0, 1.5, 3.0, 4.0};
  c.numeric.j_max = 4;
  c.numeric.omegas = {1.0, 2.0};
  c.output.formats = {"json", "svg"};
  const Json j = to_json(c);
  CHECK(to_json(from_json(j)) == j);

  Json extra = j;
  extra["numeric"]["tolerance"] = 1e-9;
  CHECK_ERRC(from_json(extra), Errc::ConfigInvalid);
  Json typed = j;
  typed["params"]["N"] = "three";
  CHECK_ERRC(from_json(typed), Errc::ConfigInvalid);
  CHECK_ERRC(parse_command("plot"), Errc::ConfigInvalid);

  RunConfig bad = c;
  bad.params.alpha = 3.0;
  CHECK_ERRC(validate(bad), Errc::AlphaOutOfRange);
  bad = c;
  bad.output.formats = {"xml"};
  CHECK_ERRC(validate(bad), Errc::ConfigInvalid);
  bad = c;
  bad.numeric.rtol = -1.0;
  CHECK_ERRC(validate(bad), Errc::ConfigInvalid);
  bad = c;
  bad.command = Command::Sweep;
  bad.profile_path = "x.csv";
  CHECK_ERRC(validate(bad), Errc::ConfigInvalid);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  CHECK(run_args({"solve", "--N", "3", "--alpha", "3", "--out", dir.string()}) == kExitValidation);
  CHECK(run_args({"solve", "--omega", "0.1", "--out", dir.string()}) == kExitValidation);
  CHECK(run_args({"frobnicate", "--out", dir.string()}) == kExitValidation);
  CHECK(run_args({"solve", "--no-such-flag"}) == kExitValidation);
  // sweep with one point below the threshold keeps the others
  CHECK(run_args({"sweep", "--gamma", "0.5", "--omegas", "0.01,1", "--out", dir.string(), "--format", "csv"}) ==
        kExitNumeric);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(fs::exists(dir / "run.log"));
}

TEST_CASE("config file with flag overrides") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  RunConfig c;
  c.command = Command::Solve;
  c.params = {3, 1.0, 1.0, 1.0, 3.0};
  c.output.directory = (dir / "out").string();
  c.output.formats = {"json"};
  std::ofstream(dir / "run.json") << dump_json(to_json(c));
  REQUIRE(run_args({"--config", (dir / "run.json").string(), "--omega", "2"}) == kExitOk);
  const Json rep = Json::parse(slurp(dir / "out" / "solve.json"));
  CHECK(rep["schema"] == "gslab/1");
  CHECK(rep["command"] == "solve");
  CHECK(rep["config"]["params"]["omega"] == 2.0);
  CHECK(rep["result"]["params"]["omega"] == 2.0);
  CHECK(rep["result"]["residuals"]["ode"]["max"].get<double>() < 1e-8);
  CHECK(slurp(dir / "out" / "solve.json").find("T") == std::string::npos);
}

TEST_CASE("profile reuse through the command line") {
  const fs::path dir = scratch("reuse");
  REQUIRE(run_args({"solve", "--N", "3", "--gamma", "1", "--alpha", "1", "--omega", "1", "--p", "3", "--out",
                    dir.string(), "--format", "csv"}) == kExitOk);
  REQUIRE(run_args({"spectrum", "--with-profile", (dir / "profile.csv").string(), "--jmax", "4", "--out",
                    (dir / "spec").string(), "--format", "json"}) == kExitOk);
  const Json rep = Json::parse(slurp(dir / "spec" / "spectrum.json"));
  CHECK(rep["result"]["verdict"]["kind"] == "PASS");
  CHECK(rep["result"]["params"]["N"] == 3);
}

TEST_CASE("svg output is deterministic") {
  const Series s{"x^2", {0.0, 1.0, 2.0}, {0.0, 1.0, 4.0}};
  const std::string a = line_plot({"squares", "x", "y"}, {s}), b = line_plot({"squares", "x", "y"}, {s});
  CHECK(a == b);
  CHECK(a.find("<polyline") != std::string::npos);
  CHECK(a.find("squares") != std::string::npos);
  const std::string lg = line_plot({"log", "r", "G", true, true}, {{"G", {0.0, 1e-3, 1.0}, {1.0, -2.0, 3.0}}});
  CHECK(lg.find("nan") == std::string::npos);
}
