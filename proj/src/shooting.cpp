#include "gslab/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "gslab/error.hpp"

namespace gslab {

namespace {

constexpr int kSeriesDegree = 10;
constexpr double kSeriesTolerance = 1e-13;

using Grid2 = std::vector<std::vector<double>>;

Grid2 zero_grid() { return Grid2(kSeriesDegree + 1, std::vector<double>(kSeriesDegree + 1, 0.0)); }

// Product of two bivariate series truncated to total degree kSeriesDegree.
Grid2 multiply(const Grid2& x, const Grid2& y) {
  Grid2 out = zero_grid();
  for (int k1 = 0; k1 <= kSeriesDegree; ++k1)
    for (int l1 = 0; k1 + l1 <= kSeriesDegree; ++l1) {
      if (x[k1][l1] == 0.0) continue;
      for (int k2 = 0; k1 + l1 + k2 <= kSeriesDegree; ++k2)
        for (int l2 = 0; k1 + l1 + k2 + l2 <= kSeriesDegree; ++l2)
          out[k1 + k2][l1 + l2] += x[k1][l1] * y[k2][l2];
    }
  return out;
}

// Coefficients of phi^p = phi0^p (1 + u)^p with u = (phi - phi0) / phi0.
Grid2 power_series(const Grid2& c, double p) {
  const double phi0 = c[0][0];
  Grid2 u = c;
  u[0][0] = 0.0;
  for (auto& row : u)
    for (double& x : row) x /= phi0;
  Grid2 out = zero_grid();
  Grid2 un = zero_grid();
  un[0][0] = 1.0;
  double binom = 1.0;
  const double scale = std::pow(phi0, p);
  for (int n = 0; n <= kSeriesDegree; ++n) {
    if (n > 0) {
      un = multiply(un, u);
      binom *= (p - (n - 1)) / n;
    }
    for (int k = 0; k <= kSeriesDegree; ++k)
      for (int l = 0; k + l <= kSeriesDegree; ++l) out[k][l] += scale * binom * un[k][l];
  }
  return out;
}

}  // namespace

double SeriesStart::eval(double r) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.coeff * std::pow(r, t.exponent);
  return s;
}

double SeriesStart::eval_deriv(double r) const {
  double s = 0.0;
  for (const auto& t : terms)
    if (t.exponent != 0.0) s += t.coeff * t.exponent * std::pow(r, t.exponent - 1.0);
  return s;
}

SeriesStart series_start(const Params& params, double phi0, double r0, double max_error) {
  if (!(phi0 > 0.0) || !std::isfinite(phi0)) throw Error(Errc::InvalidArgument, "phi0 must be positive");
  if (!(r0 > 0.0)) throw Error(Errc::InvalidArgument, "start radius must be positive");
  const double n = params.dim;
  const double step_gamma = 2.0 - params.alpha;
  auto exponent = [&](int k, int l) { return k * step_gamma + 2.0 * l; };

  Grid2 c = zero_grid();
  c[0][0] = phi0;
  for (int d = 1; d <= kSeriesDegree; ++d) {
    const Grid2 pw = power_series(c, params.p);
    for (int k = 0; k <= d; ++k) {
      const int l = d - k;
      double rhs = 0.0;
      if (l >= 1) rhs += params.omega * c[k][l - 1] - pw[k][l - 1];
      if (k >= 1) rhs -= params.gamma * c[k - 1][l];
      const double e = exponent(k, l);
      c[k][l] = rhs / (e * (e + n - 2.0));
    }
  }

  SeriesStart out;
  out.r0 = r0;
  out.phi0 = phi0;
  double last_value = 0.0, last_deriv = 0.0, deriv_scale = 0.0;
  for (int k = 0; k <= kSeriesDegree; ++k)
    for (int l = 0; k + l <= kSeriesDegree; ++l) {
      if (c[k][l] == 0.0) continue;
      const double e = exponent(k, l);
      out.terms.push_back({k, l, e, c[k][l]});
      const double v = c[k][l] * std::pow(r0, e);
      const double dv = e == 0.0 ? 0.0 : c[k][l] * e * std::pow(r0, e - 1.0);
      deriv_scale += std::abs(dv);
      if (k + l == kSeriesDegree) {
        last_value += std::abs(v);
        last_deriv += std::abs(dv);
      }
    }
  out.value = out.eval(r0);
  out.deriv = out.eval_deriv(r0);
  out.truncation = std::max(last_value / phi0, deriv_scale > 0.0 ? last_deriv / deriv_scale : 0.0);
  if (!std::isfinite(out.value) || !std::isfinite(out.deriv) || !(out.truncation <= max_error)) {
    std::ostringstream msg;
    msg << "series truncation estimate " << out.truncation << " at r0 = " << r0 << " exceeds " << max_error;
    throw Error(Errc::StartRadiusTooLarge, msg.str());
  }
  return out;
}

const char* to_string(ShotKind kind) noexcept {
  switch (kind) {
    case ShotKind::Crossing: return "Crossing";
    case ShotKind::Rebound: return "Rebound";
    case ShotKind::Decaying: return "Decaying";
    case ShotKind::Unresolved: return "Unresolved";
  }
  return "?";
}

double start_radius(const Params& params, double phi0_max, const ShootSettings& settings) {
  if (settings.r0 > 0.0) return settings.r0;
  double r0 = 1e-6 / std::sqrt(params.omega);
  for (int i = 0; i < 150; ++i, r0 *= 1e-2) {
    try {
      series_start(params, phi0_max, r0, kSeriesTolerance);
      return r0;
    } catch (const Error& e) {
      if (e.code() != Errc::StartRadiusTooLarge) throw;
    }
  }
  throw Error(Errc::StartRadiusTooLarge, "no start radius with an acceptable series truncation");
}

double default_r_max(const Params& params, const ShootSettings& settings) {
  return settings.r_max > 0.0 ? settings.r_max : 30.0 / std::sqrt(params.omega);
}

std::vector<double> shooting_grid(const Params& params, double r0, const ShootSettings& settings) {
  const double unit = std::min(1.0, 1.0 / std::sqrt(params.omega));
  return profile_grid(r0, default_r_max(params, settings), settings.grid_ratio, settings.grid_step * unit);
}

namespace {

using State = std::array<double, 2>;

struct RawShot {
  ShotKind kind = ShotKind::Unresolved;
  double event_radius = 0.0;
  ProfileSample event_state;
  std::vector<double> r, v, d;
};

State rhs(const Params& params, double r, const State& y) {
  return {y[1], ode_second(params, r, y[0], y[1])};
}

double cubic_hermite(double t, double h, double y0, double d0, double y1, double d1) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * d1;
}

double cubic_hermite_deriv(double t, double h, double y0, double d0, double y1, double d1) {
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (-6 * t2 + 6 * t) * y1) / h + (3 * t2 - 4 * t + 1) * d0 +
         (3 * t2 - 2 * t) * d1;
}

// Bisection on t in [0, 1] for the sign change of fn, keeping the endpoint
// where `reached(fn(t))` holds.
template <class Fn, class Pred>
double locate(Fn fn, Pred reached) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (reached(fn(mid)))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Dormand-Prince 5(4) with PI step control. When `grid` is given, steps land
// on every node below the stopping radius and samples are recorded there.
RawShot run_shot(const Params& params, const SeriesStart& start, double r_max, double rtol, double decay_abs,
                 const std::vector<double>* grid) {
  static constexpr double a21 = 1.0 / 5, a31 = 3.0 / 40, a32 = 9.0 / 40, a41 = 44.0 / 45, a42 = -56.0 / 15,
                          a43 = 32.0 / 9, a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729, a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656, b1 = 35.0 / 384, b3 = 500.0 / 1113,
                          b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84, e1 = 71.0 / 57600,
                          e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                          e7 = -1.0 / 40;
  RawShot out;
  double r = start.r0;
  State y{start.value, start.deriv};
  const double atol = rtol * 1e-2 * start.phi0;
  std::size_t node = 0;
  auto record = [&]() {
    out.r.push_back(r);
    out.v.push_back(y[0]);
    out.d.push_back(y[1]);
  };
  if (grid) {
    if (grid->empty() || (*grid)[0] != r) throw Error(Errc::InvalidArgument, "grid must start at r0");
    record();
    node = 1;
  }
  if (y[1] >= 0.0) {
    out.kind = ShotKind::Rebound;
    out.event_radius = r;
    out.event_state = {y[0], y[1]};
    return out;
  }

  State k1 = rhs(params, r, y);
  double h = r / 4.0;
  double err_old = 1e-4;
  int coincident_retries = 0;
  for (long steps = 0;; ++steps) {
    if (steps > 20'000'000) throw Error(Errc::NoConvergence, "step limit exceeded in outward integration");
    double r_target = r_max;
    bool to_node = false;
    if (grid && node < grid->size() && (*grid)[node] <= r_max) {
      r_target = (*grid)[node];
      to_node = true;
    }
    h = std::min({h, r / 4.0, r_target - r});
    bool lands = h >= r_target - r;
    if (!(h > 16.0 * std::numeric_limits<double>::epsilon() * r)) {
      std::ostringstream msg;
      msg << "step size " << h << " underflows at r = " << r;
      throw Error(Errc::StepUnderflow, msg.str());
    }
    auto at = [&](const State& base, std::initializer_list<std::pair<double, const State*>> parts) {
      State s = base;
      for (const auto& [coef, k] : parts) {
        s[0] += h * coef * (*k)[0];
        s[1] += h * coef * (*k)[1];
      }
      return s;
    };
    const State k2 = rhs(params, r + h / 5, at(y, {{a21, &k1}}));
    const State k3 = rhs(params, r + 3 * h / 10, at(y, {{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(params, r + 4 * h / 5, at(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs(params, r + 8 * h / 9, at(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(params, r + h, at(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y1 = at(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double r1 = lands ? r_target : r + h;
    const State k7 = rhs(params, r1, y1);
    if (!std::isfinite(y1[0]) || !std::isfinite(y1[1]) || !std::isfinite(k7[1])) {
      std::ostringstream msg;
      msg << "non-finite state near r = " << r;
      throw Error(Errc::NonFiniteState, msg.str());
    }
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = std::sqrt(err / 2.0);
    if (!(err <= 1.0)) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    const bool crossing = y1[0] <= 0.0;
    const bool rebound = y[1] < 0.0 && y1[1] >= 0.0;
    if (crossing && rebound) {
      if (++coincident_retries <= 40) {
        h *= 0.5;
        continue;
      }
      out.kind = ShotKind::Decaying;
      out.event_radius = r;
      out.event_state = {y[0], y[1]};
      return out;
    }
    const double hh = r1 - r;
    if (crossing) {
      const double t = locate(
          [&](double s) { return cubic_hermite(s, hh, y[0], y[1], y1[0], y1[1]); }, [](double v) { return v <= 0.0; });
      out.kind = ShotKind::Crossing;
      out.event_radius = r + t * hh;
      out.event_state = {std::min(0.0, cubic_hermite(t, hh, y[0], y[1], y1[0], y1[1])),
                         cubic_hermite_deriv(t, hh, y[0], y[1], y1[0], y1[1])};
      return out;
    }
    if (rebound) {
      const double t = locate(
          [&](double s) { return cubic_hermite(s, hh, y[1], k1[1], y1[1], k7[1]); },
          [](double v) { return v >= 0.0; });
      out.kind = ShotKind::Rebound;
      out.event_radius = r + t * hh;
      out.event_state = {cubic_hermite(t, hh, y[0], y[1], y1[0], y1[1]),
                         std::max(0.0, cubic_hermite(t, hh, y[1], k1[1], y1[1], k7[1]))};
      return out;
    }

    r = r1;
    y = y1;
    k1 = k7;
    coincident_retries = 0;
    if (lands && to_node) {
      record();
      ++node;
    }
    const double fac = std::clamp(0.9 * std::pow(err, -0.7 / 5) * std::pow(err_old, 0.4 / 5), 0.2, 5.0);
    err_old = std::max(err, 1e-4);
    h = hh * fac;

    if (decay_abs > 0.0 && y[0] < decay_abs && std::abs(y[1]) < decay_abs) {
      out.kind = ShotKind::Decaying;
      out.event_radius = r;
      out.event_state = {y[0], y[1]};
      return out;
    }
    if (r >= r_max) {
      out.kind = ShotKind::Unresolved;
      out.event_radius = r;
      out.event_state = {y[0], y[1]};
      return out;
    }
  }
}

ShotKind classify_at(const Params& params, double phi0, double r0, const ShootSettings& settings) {
  const SeriesStart start = series_start(params, phi0, r0);
  return run_shot(params, start, 1000.0 / std::sqrt(params.omega), settings.rtol, 0.0, nullptr).kind;
}

}  // namespace

ShootOutcome integrate_outward(const Params& params, const SeriesStart& start, double r_max, double tol,
                               const ShootSettings& settings) {
  if (!(r_max > start.r0)) throw Error(Errc::InvalidArgument, "r_max must exceed the start radius");
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  const double unit = std::min(1.0, 1.0 / std::sqrt(params.omega));
  const auto grid = profile_grid(start.r0, r_max, settings.grid_ratio, settings.grid_step * unit);
  RawShot raw = run_shot(params, start, r_max, tol, settings.decay_threshold * start.phi0, &grid);
  ShootOutcome out{raw.kind, raw.event_radius, raw.event_state,
                   RadialProfile(params, std::move(raw.r), std::move(raw.v), std::move(raw.d), start.phi0,
                                 std::nullopt)};
  return out;
}

ShotKind classify_shot(const Params& params, double phi0, const ShootSettings& settings) {
  return classify_at(params, phi0, start_radius(params, phi0, settings), settings);
}

RadialProfile find_ground_state(const Params& params, Bracket bracket, double tol, const ShootSettings& settings) {
  require_above_threshold(params);
  if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo) || !std::isfinite(bracket.hi))
    throw Error(Errc::InvalidBracket, "bracket must satisfy 0 < lo < hi");
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "bisection tolerance must be positive");
  const double r0 = start_radius(params, bracket.hi, settings);
  if (classify_at(params, bracket.lo, r0, settings) != ShotKind::Rebound)
    throw Error(Errc::InvalidBracket, "lower end of the bracket does not rebound");
  if (classify_at(params, bracket.hi, r0, settings) != ShotKind::Crossing)
    throw Error(Errc::InvalidBracket, "upper end of the bracket does not cross zero");

  double lo = bracket.lo, hi = bracket.hi;
  for (int it = 0;; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (it >= settings.max_bisections) throw Error(Errc::NoConvergence, "bisection iteration cap reached");
    const ShotKind kind = classify_at(params, mid, r0, settings);
    if (kind == ShotKind::Rebound)
      lo = mid;
    else if (kind == ShotKind::Unresolved)
      throw Error(Errc::NoConvergence, "shot neither crossed, rebounded nor decayed");
    else
      hi = mid;
  }
  if (hi - lo > tol) throw Error(Errc::NoConvergence, "bracket did not shrink below the tolerance");

  const double mid = lo + 0.5 * (hi - lo);
  const double r_max = default_r_max(params, settings);
  const auto grid = shooting_grid(params, r0, settings);
  auto record = [&](double phi0) {
    return run_shot(params, series_start(params, phi0, r0), r_max, settings.rtol, 0.0, &grid);
  };
  const RawShot s_lo = record(lo), s_hi = record(hi), s_mid = record(mid);

  const std::size_t n = std::min({s_lo.r.size(), s_hi.r.size(), s_mid.r.size()});
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = s_mid.v[i];
    if (!(v > 0.0) || !(s_mid.d[i] < 0.0)) break;
    if (!(std::abs(s_hi.v[i] - s_lo.v[i]) <= settings.match_spread * v)) break;
    m = i;
  }
  const double r_match = s_mid.r[m];
  if (r_match < 2.0 / std::sqrt(params.omega)) {
    std::ostringstream msg;
    msg << "bracket shots separate at r = " << r_match << ", before the far field";
    throw Error(Errc::NoConvergence, msg.str());
  }
  const double rate = -s_mid.d[m] / s_mid.v[m];
  const ExpTail tail{s_mid.v[m] * std::exp(rate * r_match), rate};
  RadialProfile profile(params, std::vector<double>(s_mid.r.begin(), s_mid.r.begin() + m + 1),
                        std::vector<double>(s_mid.v.begin(), s_mid.v.begin() + m + 1),
                        std::vector<double>(s_mid.d.begin(), s_mid.d.begin() + m + 1), mid, tail);
  profile.check_ground_state();
  return profile;
}

Bracket auto_bracket(const Params& params, const ShootSettings& settings) {
  require_above_threshold(params);
  const double seed = std::pow(params.omega, 1.0 / (params.p - 1.0));
  auto classify = [&](double phi0) {
    const ShotKind k = classify_shot(params, phi0, settings);
    if (k == ShotKind::Unresolved) throw Error(Errc::NoConvergence, "unresolved shot during bracketing");
    return k == ShotKind::Rebound ? ShotKind::Rebound : ShotKind::Crossing;
  };
  const ShotKind first = classify(seed);
  double prev = seed;
  for (int i = 0; i < 60; ++i) {
    const double next = first == ShotKind::Rebound ? prev * 2.0 : prev * 0.5;
    if (classify(next) != first)
      return first == ShotKind::Rebound ? Bracket{prev, next} : Bracket{next, prev};
    prev = next;
  }
  throw Error(Errc::BracketNotFound, "no Rebound/Crossing pair within 60 doublings of the seed");
}

RadialProfile solve_ground_state(const Params& params, const ShootSettings& settings,
                                 std::optional<double> phi0_hint) {
  require_above_threshold(params);
  if (phi0_hint && *phi0_hint > 0.0) {
    const Bracket b{*phi0_hint * 0.98, *phi0_hint * 1.02};
    if (classify_shot(params, b.lo, settings) == ShotKind::Rebound &&
        classify_shot(params, b.hi, settings) == ShotKind::Crossing)
      return find_ground_state(params, b, 1e-12 * b.hi, settings);
  }
  const Bracket b = auto_bracket(params, settings);
  return find_ground_state(params, b, 1e-12 * b.hi, settings);
}

ScanResult scan_initial_values(const Params& params, std::span<const double> phi0_values,
                               const ShootSettings& settings) {
  ScanResult out;
  out.phi0.assign(phi0_values.begin(), phi0_values.end());
  if (out.phi0.empty()) return out;
  const double r0 = start_radius(params, *std::max_element(out.phi0.begin(), out.phi0.end()), settings);
  for (double v : out.phi0) out.kinds.push_back(classify_at(params, v, r0, settings));
  for (std::size_t i = 1; i < out.kinds.size(); ++i) {
    if (out.kinds[i - 1] == ShotKind::Rebound && out.kinds[i] == ShotKind::Crossing) ++out.transitions;
    if (out.kinds[i - 1] == ShotKind::Crossing && out.kinds[i] == ShotKind::Rebound) ++out.reverse_transitions;
  }
  return out;
}

namespace {

// First-derivative weights at z for arbitrary nodes (Fornberg's recursion).
std::array<double, 7> derivative_weights(const double* x, double z) {
  constexpr int n = 7;
  double c[n][2] = {};
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::array<double, 7> w{};
  for (int i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

}  // namespace

OdeResidual ode_residual(const Params& params, const RadialProfile& profile, double grid_ratio, double grid_step) {
  const double r0 = profile.r_first(), r_end = profile.r_last();
  const double unit = std::min(1.0, 1.0 / std::sqrt(params.omega));
  const auto grid = profile_grid(r0, r_end, grid_ratio, grid_step * unit);
  const RawShot shot =
      run_shot(params, series_start(params, profile.phi0(), r0), r_end, 1e-12, 0.0, &grid);

  OdeResidual out;
  const double nm1 = params.dim - 1.0;
  for (std::size_t i = 3; i + 3 < shot.r.size(); ++i) {
    const double r = shot.r[i];
    if (r <= 2.0 * r0) continue;
    const auto w = derivative_weights(&shot.r[i - 3], r);
    double second = 0.0;
    for (int k = 0; k < 7; ++k) second += w[k] * shot.d[i - 3 + k];
    const double phi = shot.v[i], dphi = shot.d[i];
    const double g = params.omega - (params.gamma > 0.0 ? params.gamma * std::pow(r, -params.alpha) : 0.0);
    const double nonlin = std::pow(std::abs(phi), params.p);
    const double res = second + nm1 / r * dphi - g * phi + nonlin;
    const double scale = std::abs(second) + std::abs(nm1 / r * dphi) + std::abs(g * phi) + nonlin;
    const double rel = std::abs(res) / scale;
    ++out.points;
    if (rel > out.max_residual) {
      out.max_residual = rel;
      out.r_at_max = r;
    }
  }
  return out;
}

}  // namespace gslab
