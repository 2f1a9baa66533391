#include "gslab/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "gslab/error.hpp"

namespace gslab::cli {

namespace {

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::Solve, "solve"},         {Command::Pohozaev, "pohozaev"},
    {Command::Spectrum, "spectrum"},   {Command::Stability, "stability"},
    {Command::Assumptions, "assumptions"}, {Command::Sweep, "sweep"},
};

[[noreturn]] void invalid(const std::string& msg) { throw Error(Errc::ConfigInvalid, msg); }

void reject_unknown(const Json& obj, const std::string& where, std::initializer_list<const char*> known) {
  if (!obj.is_object()) invalid(where + " must be an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) invalid("unknown key '" + key + "' in " + where);
}

double number(const Json& j, const std::string& key) {
  if (!j.is_number()) invalid("'" + key + "' must be a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& key) {
  if (!j.is_number_integer()) invalid("'" + key + "' must be an integer");
  return j.get<int>();
}

std::vector<double> numbers(const Json& j, const std::string& key) {
  if (!j.is_array()) invalid("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, key));
  return out;
}

template <class T, class F>
void read(const Json& obj, const char* key, T& target, F conv) {
  if (obj.contains(key)) target = conv(obj.at(key), key);
}

}  // namespace

const char* to_string(Command c) noexcept {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "?";
}

Command parse_command(const std::string& name) {
  for (const auto& [cmd, n] : kCommands)
    if (name == n) return cmd;
  invalid("unknown command '" + name + "'");
}

bool OutputConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

RunConfig from_json(const Json& j) {
  reject_unknown(j, "config", {"command", "params", "numeric", "output", "input"});
  RunConfig c;
  if (j.contains("command")) {
    if (!j["command"].is_string()) invalid("'command' must be a string");
    c.command = parse_command(j["command"].get<std::string>());
  }
  if (j.contains("params")) {
    const auto& p = j["params"];
    reject_unknown(p, "params", {"N", "gamma", "alpha", "omega", "p"});
    read(p, "N", c.params.dim, integer);
    read(p, "gamma", c.params.gamma, number);
    read(p, "alpha", c.params.alpha, number);
    read(p, "omega", c.params.omega, number);
    read(p, "p", c.params.p, number);
  }
  if (j.contains("numeric")) {
    const auto& n = j["numeric"];
    reject_unknown(n, "numeric",
                   {"rtol", "r_max", "decay_threshold", "grid_ratio", "grid_step", "match_spread", "spectrum_h",
                    "spectrum_r_max", "j_max", "k", "slope_h", "omegas", "ps"});
    auto& v = c.numeric;
    read(n, "rtol", v.rtol, number);
    read(n, "r_max", v.r_max, number);
    read(n, "decay_threshold", v.decay_threshold, number);
    read(n, "grid_ratio", v.grid_ratio, number);
    read(n, "grid_step", v.grid_step, number);
    read(n, "match_spread", v.match_spread, number);
    auto opt_num = [](const Json& x, const std::string& k) -> std::optional<double> {
      if (x.is_null()) return std::nullopt;
      return number(x, k);
    };
    read(n, "spectrum_h", v.spectrum_h, opt_num);
    read(n, "spectrum_r_max", v.spectrum_r_max, opt_num);
    read(n, "j_max", v.j_max, [](const Json& x, const std::string& k) -> std::optional<int> {
      if (x.is_null()) return std::nullopt;
      return integer(x, k);
    });
    read(n, "k", v.k, integer);
    read(n, "slope_h", v.slope_h, number);
    read(n, "omegas", v.omegas, numbers);
    read(n, "ps", v.ps, numbers);
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    reject_unknown(o, "output", {"directory", "formats"});
    if (o.contains("directory")) {
      if (!o["directory"].is_string()) invalid("'directory' must be a string");
      c.output.directory = o["directory"].get<std::string>();
    }
    if (o.contains("formats")) {
      if (!o["formats"].is_array()) invalid("'formats' must be an array");
      c.output.formats.clear();
      for (const auto& f : o["formats"]) {
        if (!f.is_string()) invalid("'formats' entries must be strings");
        c.output.formats.push_back(f.get<std::string>());
      }
    }
  }
  if (j.contains("input")) {
    const auto& in = j["input"];
    reject_unknown(in, "input", {"profile"});
    if (in.contains("profile") && !in["profile"].is_null()) {
      if (!in["profile"].is_string()) invalid("'profile' must be a string");
      c.profile_path = in["profile"].get<std::string>();
    }
  }
  return c;
}

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["params"] = {{"N", c.params.dim},
                 {"gamma", c.params.gamma},
                 {"alpha", c.params.alpha},
                 {"omega", c.params.omega},
                 {"p", c.params.p}};
  const auto& n = c.numeric;
  Json num;
  num["rtol"] = n.rtol;
  num["r_max"] = n.r_max;
  num["decay_threshold"] = n.decay_threshold;
  num["grid_ratio"] = n.grid_ratio;
  num["grid_step"] = n.grid_step;
  num["match_spread"] = n.match_spread;
  num["spectrum_h"] = n.spectrum_h ? Json(*n.spectrum_h) : Json(nullptr);
  num["spectrum_r_max"] = n.spectrum_r_max ? Json(*n.spectrum_r_max) : Json(nullptr);
  num["j_max"] = n.j_max ? Json(*n.j_max) : Json(nullptr);
  num["k"] = n.k;
  num["slope_h"] = n.slope_h;
  num["omegas"] = n.omegas;
  num["ps"] = n.ps;
  j["numeric"] = num;
  j["output"] = {{"directory", c.output.directory}, {"formats", c.output.formats}};
  j["input"] = {{"profile", c.profile_path ? Json(*c.profile_path) : Json(nullptr)}};
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    invalid("config file " + path + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

Params validate(const RunConfig& c) {
  const Params params = make_params(c.params.dim, c.params.gamma, c.params.alpha, c.params.omega, c.params.p);
  if (!(c.params.omega > 0.0)) throw Error(Errc::OmegaBelowThreshold, "omega must be > 0");

  const auto& n = c.numeric;
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) invalid(std::string(what) + " must be positive and finite");
  };
  if (!(n.rtol > 0.0 && n.rtol <= 1e-3)) invalid("rtol must lie in (0, 1e-3]");
  if (!(n.r_max >= 0.0) || !std::isfinite(n.r_max)) invalid("r_max must be 0 (automatic) or positive");
  if (!(n.decay_threshold > 0.0 && n.decay_threshold < 1.0)) invalid("decay_threshold must lie in (0, 1)");
  if (!(n.grid_ratio > 1.0 && n.grid_ratio <= 1.5)) invalid("grid_ratio must lie in (1, 1.5]");
  positive(n.grid_step, "grid_step");
  positive(n.match_spread, "match_spread");
  if (n.spectrum_h) positive(*n.spectrum_h, "spectrum_h");
  if (n.spectrum_r_max) positive(*n.spectrum_r_max, "spectrum_r_max");
  if (n.spectrum_h && n.spectrum_r_max && *n.spectrum_r_max / *n.spectrum_h < 100.0)
    throw Error(Errc::GridTooCoarse, "spectrum grid needs at least 100 cells");
  if (n.j_max && *n.j_max < 0) invalid("j_max must be >= 0");
  if (n.k < 1 || n.k > 50) invalid("k must lie in [1, 50]");
  if (!(n.slope_h > 0.0 && n.slope_h < 0.25)) invalid("slope_h must lie in (0, 0.25)");
  for (double w : n.omegas) positive(w, "every omega in the sweep");
  for (double p : n.ps)
    make_params(c.params.dim, c.params.gamma, c.params.alpha, c.params.omega, p);
  for (const auto& f : c.output.formats)
    if (f != "csv" && f != "json" && f != "svg") invalid("unknown output format '" + f + "'");
  if (c.profile_path && c.command != Command::Spectrum && c.command != Command::Pohozaev &&
      c.command != Command::Stability)
    invalid("a profile input is accepted only by spectrum, pohozaev and stability");
  return params;
}

ShootSettings shoot_settings(const RunConfig& c) {
  ShootSettings s;
  s.rtol = c.numeric.rtol;
  s.r_max = c.numeric.r_max;
  s.decay_threshold = c.numeric.decay_threshold;
  s.grid_ratio = c.numeric.grid_ratio;
  s.grid_step = c.numeric.grid_step;
  s.match_spread = c.numeric.match_spread;
  return s;
}

}  // namespace gslab::cli
