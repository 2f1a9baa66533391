#include "gslab/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gslab/cli/io.hpp"
#include "gslab/cli/report.hpp"
#include "gslab/cli/svg.hpp"
#include "gslab/error.hpp"

namespace gslab::cli {

namespace {

// Artifacts are collected first and written by a single writer at the end.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  void add(const std::string& name, std::string content) { files.emplace_back(name, std::move(content)); }
};

struct Resolved {
  RunConfig config;
  Params params;
  std::optional<RadialProfile> profile;  // from --with-profile
  std::optional<Omega0Estimate> omega0;
};

Json omega0_json(const Resolved& r) {
  if (!r.omega0) return r.params.omega0 ? Json{{"value", num(*r.params.omega0)}} : Json(nullptr);
  return {{"value", num(r.omega0->value)},
          {"uncertainty", num(r.omega0->uncertainty)},
          {"grid", {{"h", num(r.omega0->grid.h)}, {"r_max", num(r.omega0->grid.r_max)}}}};
}

// Loads the input profile (its metadata replaces the configured parameters),
// validates everything, then fills omega0.
Resolved resolve(const RunConfig& config) {
  Resolved r{config, Params{}, std::nullopt, std::nullopt};
  if (config.profile_path) {
    r.profile = load_profile(*config.profile_path);
    const Params& pp = r.profile->params();
    r.config.params = {pp.dim, pp.gamma, pp.alpha, pp.omega, pp.p};
  }
  r.params = validate(r.config);
  if (r.profile && r.profile->params().omega0) r.params.omega0 = r.profile->params().omega0;
  if (!r.params.omega0) {
    std::optional<GridSpec> spec;
    r.omega0 = omega0(r.params, spec);
    r.params.omega0 = r.omega0->value;
    if (!(r.params.omega > r.omega0->value + r.omega0->uncertainty)) {
      std::ostringstream msg;
      msg.precision(10);
      msg << "omega = " << r.params.omega << " does not exceed omega0 = " << r.omega0->value << " (uncertainty "
          << r.omega0->uncertainty << ")";
      throw Error(Errc::OmegaBelowThreshold, msg.str());
    }
  }
  require_above_threshold(r.params);
  return r;
}

RadialProfile ground_state(const Resolved& r) {
  if (r.profile) return *r.profile;
  return solve_ground_state(r.params, shoot_settings(r.config));
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i <= n; ++i) out.push_back(lo * std::pow(hi / lo, double(i) / n));
  return out;
}

void cmd_solve(const Resolved& r, Json& result, Artifacts& art) {
  const RadialProfile prof = ground_state(r);
  const auto co = coeffs(special_fgh(r.params), r.params);
  const OdeResidual ode = ode_residual(r.params, prof);
  const IdentityReport id = verify_identity(co, prof);

  result["params"] = to_json(r.params);
  result["omega0"] = omega0_json(r);
  result["phi0"] = num(prof.phi0());
  result["r0"] = num(prof.r_first());
  result["r_match"] = num(prof.r_last());
  result["points"] = prof.size();
  if (const auto& t = prof.tail())
    result["tail"] = {{"rate", num(t->rate)},
                      {"amplitude", num(t->amplitude)},
                      {"rate_over_sqrt_omega", num(t->rate / std::sqrt(r.params.omega))}};
  result["residuals"] = {
      {"ode", {{"max", num(ode.max_residual)}, {"r_at_max", num(ode.r_at_max)}, {"points", ode.points}}},
      {"pohozaev_identity", to_json(id)}};

  if (r.config.output.wants("csv")) art.add("profile.csv", profile_csv(prof));
  if (r.config.output.wants("svg")) {
    Series s{"phi", {}, {}};
    for (std::size_t i = 0; i < prof.size(); ++i) {
      s.x.push_back(prof.grid()[i]);
      s.y.push_back(prof.values()[i]);
    }
    art.add("profile.svg", line_plot({"Ground state", "r", "phi(r)"}, {s}));
  }
}

void cmd_pohozaev(const Resolved& r, Json& result, Artifacts& art) {
  const RadialProfile prof = ground_state(r);
  const auto co = coeffs(special_fgh(r.params), r.params);
  const auto generic = coeffs(special_fgh(r.params), r.params, CoeffMode::Generic);
  const IdentityReport id = verify_identity(co, prof);
  const IdentityReport perturbed = verify_identity(co, prof.scaled(1.01));

  double jmin = INFINITY, jmax = 0.0;
  std::vector<double> rs, Js, Gs, Ds;
  for (double x : prof.grid()) {
    const double j = J(co, prof, x);
    jmin = std::min(jmin, j);
    jmax = std::max(jmax, std::abs(j));
    rs.push_back(x);
    Js.push_back(j);
    Gs.push_back(co.G(x));
    Ds.push_back(co.D(x));
  }
  const double r_end = default_r_max(r.params, shoot_settings(r.config));
  const double j_end = J(co, prof, r_end);

  double agree = 0.0;
  for (double x : log_grid(1e-3, 10.0, 400)) {
    const double pairs[5][2] = {{co.a(x), generic.a(x)},
                                {co.b(x), generic.b(x)},
                                {co.c(x), generic.c(x)},
                                {co.G(x), generic.G(x)},
                                {co.D(x), generic.D(x)}};
    for (const auto& pr : pairs) {
      const double scale = std::max({std::abs(pr[0]), std::abs(pr[1])});
      if (scale > 0.0) agree = std::max(agree, std::abs(pr[0] - pr[1]) / scale);
    }
  }

  const auto k = closed_form_constants(r.params);
  result["params"] = to_json(r.params);
  result["omega0"] = omega0_json(r);
  result["phi0"] = num(prof.phi0());
  result["constants"] = {{"q", num(k.q)}, {"A", num(k.A)}, {"B", num(k.B)}, {"C", num(k.C)}};
  result["identity"] = to_json(id);
  result["identity_perturbed"] = to_json(perturbed);
  result["J"] = {{"min", num(jmin)},
                 {"max_abs", num(jmax)},
                 {"min_over_max", num(jmax > 0 ? jmin / jmax : 0.0)},
                 {"r_end", num(r_end)},
                 {"end", num(j_end)},
                 {"end_over_max", num(jmax > 0 ? std::abs(j_end) / jmax : 0.0)}};
  result["generic_agreement"] = num(agree);

  if (r.config.output.wants("csv")) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rs.size(); ++i)
      rows.push_back({rs[i], co.a(rs[i]), co.b(rs[i]), co.c(rs[i]), Gs[i], Ds[i], Js[i]});
    art.add("coefficients.csv", table_csv({"r", "a", "b", "c", "G", "D", "J"}, rows));
  }
  if (r.config.output.wants("svg")) {
    art.add("G.svg", line_plot({"G(r)", "r", "G", true, false, true}, {{"G", rs, Gs}}));
    art.add("J.svg", line_plot({"J(r; phi)", "r", "J", false, false, true}, {{"J", rs, Js}}));
  }
}

void cmd_spectrum(const Resolved& r, Json& result, Artifacts& art) {
  const RadialProfile prof = ground_state(r);
  const auto& n = r.config.numeric;
  const int j_max = n.j_max ? *n.j_max : r.params.dim + 2;
  std::optional<GridSpec> spec;
  if (n.spectrum_h || n.spectrum_r_max) {
    GridSpec g = linearized_grid(r.params, prof);
    if (n.spectrum_h) g.h = *n.spectrum_h;
    if (n.spectrum_r_max) g.r_max = *n.spectrum_r_max;
    spec = g;
  }
  const SpectrumReport rep = linearized_report(r.params, prof, j_max, n.k, spec);
  result["params"] = to_json(r.params);
  result["omega0"] = omega0_json(r);
  result["phi0"] = num(prof.phi0());
  result["spectrum"] = to_json(rep);
  const int required = std::min(r.params.dim + 1, max_sector(r.params.dim));
  if (rep.j_max >= required && rep.k >= 2) {
    result["verdict"] = to_json(nondegeneracy_check(rep));
  } else {
    result["verdict"] = nullptr;
    result["verdict_note"] = "nondegeneracy verdict needs j_max >= " + std::to_string(required) + " and k >= 2";
  }

  if (r.config.output.wants("csv")) {
    std::vector<std::vector<double>> rows;
    for (const auto* op : {&rep.L1, &rep.L2})
      for (const auto& s : op->sectors)
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
          rows.push_back({op == &rep.L1 ? 1.0 : 2.0, double(s.j), double(i), s.eigenvalues[i].value,
                          s.eigenvalues[i].uncertainty});
    art.add("eigenvalues.csv", table_csv({"operator", "j", "index", "value", "uncertainty"}, rows));
  }
  if (r.config.output.wants("svg")) {
    std::vector<Series> ladder;
    for (const auto* op : {&rep.L1, &rep.L2}) {
      Series s{op->name, {}, {}, true};
      for (const auto& sec : op->sectors)
        for (const auto& e : sec.eigenvalues) {
          s.x.push_back(sec.j + (op == &rep.L1 ? -0.1 : 0.1));
          s.y.push_back(e.value);
        }
      ladder.push_back(s);
    }
    art.add("ladder.svg", line_plot({"Eigenvalue ladder", "sector j", "eigenvalue", false, false, true}, ladder));
  }
}

void cmd_stability(const Resolved& r, Json& result, Artifacts& art) {
  const RadialProfile prof = ground_state(r);
  const auto settings = shoot_settings(r.config);
  StabilityRecord rec = functionals(r.params, prof);
  const SlopeEstimate sl = mass_slope(r.params, r.config.numeric.slope_h * r.params.omega, settings, prof.phi0());
  rec.slope = sl.value;
  rec.slope_uncertainty = sl.uncertainty;
  result["params"] = to_json(r.params);
  result["omega0"] = omega0_json(r);
  result["record"] = to_json(rec);
  result["slope"] = {{"value", num(sl.value)},
                     {"uncertainty", num(sl.uncertainty)},
                     {"three_point", num(sl.three_point)},
                     {"omegas", sl.omegas},
                     {"masses", sl.masses}};
  if (r.config.output.wants("csv")) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < sl.omegas.size(); ++i) rows.push_back({sl.omegas[i], sl.masses[i]});
    art.add("slope_samples.csv", table_csv({"omega", "mass"}, rows));
  }
  if (r.config.output.wants("svg")) {
    Series s{"mass", sl.omegas, sl.masses, true};
    art.add("mass_vs_omega.svg", line_plot({"Mass near omega", "omega", "mass"}, {s}));
  }
}

void cmd_assumptions(const Resolved& r, Json& result, Artifacts& art) {
  const ConditionReport rep = check_all(r.params);
  result["params"] = to_json(r.params);
  result["omega0"] = omega0_json(r);
  result["conditions"] = to_json(rep);

  const auto co = coeffs(special_fgh(r.params), r.params);
  const double len = std::min(1.0 / std::sqrt(r.params.omega), std::pow(r.params.gamma, -1.0 / (2.0 - r.params.alpha)));
  const auto rs = log_grid(1e-4 * len, 1e2 * len, 300);
  std::vector<double> G, D;
  for (double x : rs) {
    G.push_back(co.G(x));
    D.push_back(co.D(x));
  }
  if (r.config.output.wants("csv")) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rs.size(); ++i) rows.push_back({rs[i], G[i], D[i]});
    art.add("G_D.csv", table_csv({"r", "G", "D"}, rows));
  }
  if (r.config.output.wants("svg")) {
    art.add("G.svg", line_plot({"G(r)", "r", "G", true, false, true}, {{"G", rs, G}}));
    art.add("D.svg", line_plot({"D(r)", "r", "D", true, true}, {{"D", rs, D}}));
  }
}

// Returns true when every point succeeded.
bool cmd_sweep(const Resolved& r, Json& result, Artifacts& art) {
  const auto& n = r.config.numeric;
  std::vector<double> ps = n.ps.empty() ? std::vector<double>{r.params.p} : n.ps;
  std::vector<Params> points;
  for (double p : ps)
    for (double w : n.omegas) {
      Params q = r.params;
      q.p = p;
      q.omega = w;
      points.push_back(q);
    }
  const SweepResult sw = sweep(points, shoot_settings(r.config), thread_cap(), n.slope_h);
  result["params"] = to_json(r.params);
  result["omega0"] = omega0_json(r);
  result["sweep"] = to_json(sw);

  if (r.config.output.wants("csv")) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!sw.records[i]) continue;
      const auto& x = *sw.records[i];
      rows.push_back({points[i].p, x.omega, x.phi0, x.mass, x.action, x.nehari, x.virial1, x.virial2,
                      x.slope.value_or(NAN), x.slope_uncertainty.value_or(NAN)});
    }
    art.add("sweep.csv", table_csv({"p", "omega", "phi0", "mass", "action", "nehari", "virial1", "virial2", "slope",
                                    "slope_uncertainty"},
                                   rows));
  }
  if (r.config.output.wants("svg")) {
    std::vector<Series> curves;
    for (double p : ps) {
      Series s{"p = " + format_number(p), {}, {}};
      for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].p == p && sw.records[i]) {
          s.x.push_back(sw.records[i]->omega);
          s.y.push_back(sw.records[i]->mass);
        }
      curves.push_back(s);
    }
    art.add("mass_vs_omega.svg", line_plot({"Mass curve", "omega", "mass"}, curves));
  }
  return sw.failures.empty();
}

std::string report_name(Command c) { return std::string(to_string(c)) + ".json"; }

}  // namespace

unsigned thread_cap() {
  const char* v = std::getenv("GSLAB_THREADS");
  if (!v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return 0;
  return static_cast<unsigned>(n);
}

RunResult run(const RunConfig& config) {
  RunResult out;
  Artifacts art;
  RunConfig resolved_config = config;
  try {
    const Resolved r = resolve(config);
    resolved_config = r.config;
    Json result;
    bool complete = true;
    switch (r.config.command) {
      case Command::Solve: cmd_solve(r, result, art); break;
      case Command::Pohozaev: cmd_pohozaev(r, result, art); break;
      case Command::Spectrum: cmd_spectrum(r, result, art); break;
      case Command::Stability: cmd_stability(r, result, art); break;
      case Command::Assumptions: cmd_assumptions(r, result, art); break;
      case Command::Sweep: complete = cmd_sweep(r, result, art); break;
    }
    if (r.config.output.wants("json"))
      art.add(report_name(r.config.command), dump_json(envelope(r.config, std::move(result))));
    if (!complete) {
      out.exit_code = kExitNumeric;
      out.message = "sweep finished with failures; completed rows were written";
    }
  } catch (const Error& e) {
    out.exit_code = is_validation_error(e.code()) ? kExitValidation : kExitNumeric;
    out.message = e.what();
  } catch (const std::exception& e) {
    out.exit_code = kExitNumeric;
    out.message = e.what();
  }

  try {
    for (const auto& [name, content] : art.files) {
      const std::string path = (std::filesystem::path(resolved_config.output.directory) / name).string();
      write_text(path, content);
      out.files.push_back(path);
    }
  } catch (const std::exception& e) {
    out.exit_code = kExitNumeric;
    out.message = e.what();
  }
  return out;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Ground states of NLS with an inverse-power potential"};
  std::string command, config_path, out_dir, profile;
  int dim = 0, j_max = 0, k = 0;
  double gamma = 0, alpha = 0, omega = 0, p = 0, rtol = 0, r_max = 0, decay = 0, ratio = 0, step = 0, spread = 0,
         sh = 0, srmax = 0, slope_h = 0;
  std::vector<double> omegas, ps;
  std::vector<std::string> formats;

  app.add_option("command", command, "solve | pohozaev | spectrum | stability | assumptions | sweep");
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  auto* o_dim = app.add_option("--N", dim, "space dimension");
  auto* o_gamma = app.add_option("--gamma", gamma, "potential strength");
  auto* o_alpha = app.add_option("--alpha", alpha, "potential exponent");
  auto* o_omega = app.add_option("--omega", omega, "frequency");
  auto* o_p = app.add_option("--p", p, "nonlinearity exponent");
  auto* o_rtol = app.add_option("--rtol", rtol, "integration tolerance");
  auto* o_rmax = app.add_option("--r-max", r_max, "profile radius (0: automatic)");
  auto* o_decay = app.add_option("--decay-threshold", decay, "decay exit threshold relative to phi(0)");
  auto* o_ratio = app.add_option("--grid-ratio", ratio, "geometric ratio of the profile grid");
  auto* o_step = app.add_option("--grid-step", step, "uniform spacing of the profile grid");
  auto* o_spread = app.add_option("--match-spread", spread, "bracket spread tolerated in the profile");
  auto* o_sh = app.add_option("--spectrum-h", sh, "cell width of the coarsest spectral grid");
  auto* o_srmax = app.add_option("--spectrum-rmax", srmax, "Dirichlet radius of the spectral grid");
  auto* o_jmax = app.add_option("--jmax", j_max, "highest angular sector");
  auto* o_k = app.add_option("--k", k, "eigenvalues per sector");
  auto* o_slope = app.add_option("--slope-h", slope_h, "slope step relative to omega");
  auto* o_omegas = app.add_option("--omegas", omegas, "sweep frequencies")->delimiter(',');
  auto* o_ps = app.add_option("--ps", ps, "sweep exponents")->delimiter(',');
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_fmt = app.add_option("--format", formats, "output formats: csv, json, svg")->delimiter(',');
  auto* o_prof = app.add_option("--with-profile", profile, "profile CSV to analyse instead of solving");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!command.empty()) cfg.command = parse_command(command);
    else if (config_path.empty()) throw Error(Errc::ConfigInvalid, "no command given");
  } catch (const Error& e) {
    std::cerr << "gslab: " << e.what() << '\n';
    return is_validation_error(e.code()) ? kExitValidation : kExitNumeric;
  }
  auto set = [](CLI::Option* o, auto& target, const auto& value) {
    if (o->count()) target = value;
  };
  set(o_dim, cfg.params.dim, dim);
  set(o_gamma, cfg.params.gamma, gamma);
  set(o_alpha, cfg.params.alpha, alpha);
  set(o_omega, cfg.params.omega, omega);
  set(o_p, cfg.params.p, p);
  set(o_rtol, cfg.numeric.rtol, rtol);
  set(o_rmax, cfg.numeric.r_max, r_max);
  set(o_decay, cfg.numeric.decay_threshold, decay);
  set(o_ratio, cfg.numeric.grid_ratio, ratio);
  set(o_step, cfg.numeric.grid_step, step);
  set(o_spread, cfg.numeric.match_spread, spread);
  if (o_sh->count()) cfg.numeric.spectrum_h = sh;
  if (o_srmax->count()) cfg.numeric.spectrum_r_max = srmax;
  if (o_jmax->count()) cfg.numeric.j_max = j_max;
  set(o_k, cfg.numeric.k, k);
  set(o_slope, cfg.numeric.slope_h, slope_h);
  set(o_omegas, cfg.numeric.omegas, omegas);
  set(o_ps, cfg.numeric.ps, ps);
  set(o_out, cfg.output.directory, out_dir);
  set(o_fmt, cfg.output.formats, formats);
  if (o_prof->count()) cfg.profile_path = profile;

  const auto t0 = std::chrono::steady_clock::now();
  const RunResult res = run(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (res.exit_code != kExitOk) std::cerr << "gslab: " << res.message << '\n';
  for (const auto& f : res.files) std::cout << f << '\n';

  // Timestamps go to the sidecar log only.
  std::ostringstream log;
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  log << stamp << " command=" << to_string(cfg.command) << " exit=" << res.exit_code << " seconds=" << secs
      << " threads_cap=" << thread_cap() << '\n';
  if (!res.message.empty()) log << "  message: " << res.message << '\n';
  for (const auto& f : res.files) log << "  wrote " << f << '\n';
  try {
    const auto path = std::filesystem::path(cfg.output.directory) / "run.log";
    std::filesystem::create_directories(cfg.output.directory);
    std::ofstream(path, std::ios::app) << log.str();
  } catch (const std::exception&) {
  }
  return res.exit_code;
}

}  // namespace gslab::cli
