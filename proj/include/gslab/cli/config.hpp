#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gslab/core.hpp"
#include "gslab/shooting.hpp"

namespace gslab::cli {

using Json = nlohmann::ordered_json;

enum class Command { Solve, Pohozaev, Spectrum, Stability, Assumptions, Sweep };

const char* to_string(Command c) noexcept;
Command parse_command(const std::string& name);

struct ParamConfig {
  int dim = 3;
  double gamma = 1.0;
  double alpha = 1.0;
  double omega = 1.0;
  double p = 3.0;
};

struct NumericConfig {
  double rtol = 1e-12;
  double r_max = 0.0;  // 0: automatic
  double decay_threshold = 1e-6;
  double grid_ratio = 1.04;
  double grid_step = 0.04;
  double match_spread = 1e-8;
  std::optional<double> spectrum_h;
  std::optional<double> spectrum_r_max;
  std::optional<int> j_max;  // default N + 2
  int k = 3;
  double slope_h = 0.02;  // relative to omega
  std::vector<double> omegas;
  std::vector<double> ps;
};

struct OutputConfig {
  std::string directory = ".";
  std::vector<std::string> formats{"csv", "json"};

  bool wants(const std::string& format) const;
};

struct RunConfig {
  Command command = Command::Solve;
  ParamConfig params;
  NumericConfig numeric;
  OutputConfig output;
  std::optional<std::string> profile_path;
};

// Strict reader: unknown keys and wrong types raise ConfigInvalid.
RunConfig from_json(const Json& j);
Json to_json(const RunConfig& c);

RunConfig load_config(const std::string& path);

// Checks every override against the module preconditions; throws the
// validation error of the first violation. Returns validated parameters
// (omega0 not yet known).
Params validate(const RunConfig& c);

ShootSettings shoot_settings(const RunConfig& c);

}  // namespace gslab::cli
