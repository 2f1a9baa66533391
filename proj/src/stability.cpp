#include "gslab/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gslab/error.hpp"
#include "gslab/quadrature.hpp"
#include "gslab/spectrum.hpp"

namespace gslab {

namespace {

// int_0^inf w(r) r^{N-1} dr over the sampled range plus head and tail.
struct RadialIntegrals {
  double mass = 0.0, grad = 0.0, pot = 0.0, lp1 = 0.0;
};

RadialIntegrals integrate(const Params& params, const RadialProfile& profile) {
  const int N = params.dim;
  const double alpha = params.alpha;
  const double p = params.p;
  const double nm1 = N - 1.0;

  auto weight = [&](double r, double k) { return k == 0.0 ? 1.0 : std::pow(r, k); };
  const auto grid = profile.grid();

  RadialIntegrals out;
  out.mass = quad::simpson(grid, [&](double r) {
    const double v = profile.value(r);
    return v * v * weight(r, nm1);
  });
  out.grad = quad::simpson(grid, [&](double r) {
    const double d = profile.eval(r).deriv;
    return d * d * weight(r, nm1);
  });
  out.pot = quad::simpson(grid, [&](double r) {
    const double v = profile.value(r);
    return v * v * std::pow(r, nm1 - alpha);
  });
  out.lp1 = quad::simpson(grid, [&](double r) {
    const double v = std::abs(profile.value(r));
    return std::pow(v, p + 1.0) * weight(r, nm1);
  });

  // Near the origin phi is flat to leading order and phi' ~ r^s.
  const double r1 = profile.r_first();
  const auto s1 = profile.eval(r1);
  const double s = params.gamma > 0.0 ? 1.0 - alpha : 1.0;
  out.mass += s1.value * s1.value * std::pow(r1, N) / N;
  out.pot += s1.value * s1.value * std::pow(r1, N - alpha) / (N - alpha);
  out.lp1 += std::pow(std::abs(s1.value), p + 1.0) * std::pow(r1, N) / N;
  out.grad += s1.deriv * s1.deriv * std::pow(r1, N) / (2.0 * s + N);

  if (const auto& tail = profile.tail()) {
    const double R = profile.r_last();
    const double A = tail->amplitude, d = tail->rate;
    const double m2 = A * A * quad::power_exp_tail(nm1, 2.0 * d, R);
    out.mass += m2;
    out.grad += d * d * m2;
    out.pot += A * A * quad::power_exp_tail(nm1 - alpha, 2.0 * d, R);
    out.lp1 += std::pow(A, p + 1.0) * quad::power_exp_tail(nm1, (p + 1.0) * d, R);
  }

  for (double v : {out.mass, out.grad, out.pot, out.lp1})
    if (!std::isfinite(v)) throw Error(Errc::QuadratureFailure, "non-finite functional integral");
  return out;
}

}  // namespace

StabilityRecord functionals(const Params& params, const RadialProfile& profile) {
  const RadialIntegrals I = integrate(params, profile);
  const double sigma = sphere_area(params.dim);
  const double g = params.gamma, a = params.alpha, w = params.omega, p = params.p;
  const double m = params.dim * (p - 1.0) / 2.0;

  StabilityRecord rec;
  rec.omega = w;
  rec.phi0 = profile.phi0();
  rec.mass = sigma * I.mass;
  rec.grad_sq = sigma * I.grad;
  rec.pot_int = sigma * I.pot;
  rec.lp1 = sigma * I.lp1;

  rec.action = 0.5 * (rec.grad_sq - g * rec.pot_int + w * rec.mass) - rec.lp1 / (p + 1.0);
  rec.nehari = rec.grad_sq - g * rec.pot_int + w * rec.mass - rec.lp1;
  rec.virial1 = rec.grad_sq - 0.5 * g * a * rec.pot_int - m / (p + 1.0) * rec.lp1;
  rec.virial2 = rec.grad_sq - 0.5 * g * a * (a - 1.0) * rec.pot_int - m * (m - 1.0) / (p + 1.0) * rec.lp1;

  const double nehari_scale = rec.grad_sq + g * rec.pot_int + w * rec.mass + rec.lp1;
  const double virial1_scale = rec.grad_sq + 0.5 * g * a * rec.pot_int + m / (p + 1.0) * rec.lp1;
  const double virial2_scale =
      rec.grad_sq + 0.5 * g * a * std::abs(a - 1.0) * rec.pot_int + m * std::abs(m - 1.0) / (p + 1.0) * rec.lp1;
  rec.nehari_rel = std::abs(rec.nehari) / nehari_scale;
  rec.virial1_rel = std::abs(rec.virial1) / virial1_scale;
  rec.virial2_rel = std::abs(rec.virial2) / virial2_scale;
  rec.virial2_uncertainty =
      10.0 * std::max(rec.nehari_rel, rec.virial1_rel) * virial2_scale + 1e-12 * virial2_scale;
  return rec;
}

SlopeEstimate mass_slope(const Params& params, double h, const ShootSettings& settings,
                         std::optional<double> phi0_hint) {
  if (h == 0.0) h = 0.02 * params.omega;
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(Errc::InvalidArgument, "slope step must be positive");

  SlopeEstimate est;
  std::optional<double> hint = phi0_hint;
  for (int k : {-2, -1, 1, 2}) {
    Params shifted = params;
    shifted.omega = params.omega + k * h;
    require_above_threshold(shifted);
    // The centre hint scaled by the potential-free law phi(0) ~ omega^{1/(p-1)}.
    std::optional<double> local;
    if (hint) local = *hint * std::pow(shifted.omega / params.omega, 1.0 / (params.p - 1.0));
    const RadialProfile prof = solve_ground_state(shifted, settings, local);
    est.omegas.push_back(shifted.omega);
    est.masses.push_back(functionals(shifted, prof).mass);
  }
  const auto& M = est.masses;
  est.three_point = (M[2] - M[1]) / (2.0 * h);
  est.value = (-M[3] + 8.0 * M[2] - 8.0 * M[1] + M[0]) / (12.0 * h);
  const double mmax = *std::max_element(M.begin(), M.end());
  est.uncertainty = std::abs(est.value - est.three_point) + 1e-9 * mmax / h;
  return est;
}

const char* to_string(StabilityClass c) noexcept {
  switch (c) {
    case StabilityClass::Stable: return "Stable";
    case StabilityClass::Unstable: return "Unstable";
    case StabilityClass::Indeterminate: return "Indeterminate";
  }
  return "?";
}

StabilityClass classify(const StabilityRecord& record) {
  if (!record.slope || !record.slope_uncertainty)
    throw Error(Errc::InvalidArgument, "classification needs a slope with uncertainty");
  const double s = *record.slope, u = *record.slope_uncertainty;
  if (s - u > 0.0) return StabilityClass::Stable;
  if (s + u < 0.0) return StabilityClass::Unstable;
  return StabilityClass::Indeterminate;
}

const char* to_string(AuditKind kind) noexcept {
  return kind == AuditKind::Counterexample ? "counterexample" : "marginal";
}

std::size_t SweepResult::counterexamples() const {
  return static_cast<std::size_t>(std::count_if(audit.begin(), audit.end(), [](const AuditEntry& e) {
    return e.kind == AuditKind::Counterexample;
  }));
}

std::vector<AuditEntry> audit_records(const std::vector<Params>& points,
                                      const std::vector<std::optional<StabilityRecord>>& records) {
  std::vector<AuditEntry> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (!rec || !rec->slope || !rec->slope_uncertainty) continue;
    const double v = rec->virial2, uv = rec->virial2_uncertainty;
    const double s = *rec->slope, us = *rec->slope_uncertainty;
    if (!(v <= uv && s >= -us)) continue;
    AuditEntry e;
    e.index = i;
    e.omega = rec->omega;
    e.p = i < points.size() ? points[i].p : 0.0;
    e.kind = (v < -uv && s > us) ? AuditKind::Counterexample : AuditKind::Marginal;
    e.virial2 = v;
    e.slope = s;
    out.push_back(e);
  }
  return out;
}

SweepResult sweep(const std::vector<Params>& points, const ShootSettings& settings, unsigned threads,
                  double h_rel) {
  SweepResult res;
  res.points = points;
  res.records.resize(points.size());
  std::vector<std::optional<std::string>> errors(points.size());

  auto work = [&](std::size_t i) {
    try {
      Params prm = points[i];
      if (!prm.potential_free() && !prm.omega0) prm = with_omega0(prm);
      require_above_threshold(prm);
      const RadialProfile prof = solve_ground_state(prm, settings);
      StabilityRecord rec = functionals(prm, prof);
      const SlopeEstimate sl = mass_slope(prm, h_rel * prm.omega, settings, prof.phi0());
      rec.slope = sl.value;
      rec.slope_uncertainty = sl.uncertainty;
      res.records[i] = rec;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };

  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, points.size()));
  if (n <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) work(i);
      });
  }

  for (std::size_t i = 0; i < points.size(); ++i)
    if (errors[i]) res.failures.push_back({i, points[i].omega, points[i].p, *errors[i]});
  res.audit = audit_records(res.points, res.records);
  return res;
}

SweepResult sweep(const Params& base, const std::vector<double>& omegas, const ShootSettings& settings,
                  unsigned threads, double h_rel) {
  std::vector<Params> points;
  points.reserve(omegas.size());
  for (double w : omegas) {
    Params p = base;
    p.omega = w;
    points.push_back(p);
  }
  return sweep(points, settings, threads, h_rel);
}

}  // namespace gslab
