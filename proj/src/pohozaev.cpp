#include "gslab/pohozaev.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gslab/error.hpp"
#include "gslab/quadrature.hpp"

namespace gslab {

ClosedFormConstants closed_form_constants(const Params& params) {
  const double n = params.dim, p = params.p, s = p + 3.0;
  ClosedFormConstants k;
  k.q = 2.0 * (p + 1.0) * (n - 1.0) / s;
  k.A = 4.0 * (n - 1.0) * (n - 4.0 + (n - 2.0) * p) * (n + 2.0 - (n - 2.0) * p);
  k.B = params.gamma * s * s * (2.0 * (n - 1.0) * (p - 1.0) - s * params.alpha);
  k.C = -2.0 * params.omega * (n - 1.0) * (p - 1.0) * s * s;
  return k;
}

PohozaevCoeffs::PohozaevCoeffs(FghTriple triple, Params params, CoeffMode mode)
    : triple_(std::move(triple)), params_(std::move(params)), mode_(mode) {
  if (mode_ == CoeffMode::ClosedForm) {
    if (triple_.kind != TripleKind::Special)
      throw Error(Errc::InvalidArgument, "closed-form coefficients exist only for the special triple");
    constants_ = closed_form_constants(params_);
  } else if (triple_.derivative_order < 3) {
    throw Error(Errc::DerivativeUnavailable, "generic coefficients need f and h derivatives up to third order");
  }
}

PohozaevCoeffs::Chain PohozaevCoeffs::generic(double r) const {
  const double p = params_.p;
  const double k1 = 2.0 * (p + 1.0) / (p + 3.0), k2 = -2.0 / (p + 3.0);
  const Jet f = triple_.f(r), g = triple_.g(r), h = triple_.h(r);
  // Logarithmic derivatives of f and h and their first two derivatives.
  auto logs = [](const Jet& j) {
    const double u = j.d1 / j.v;
    const double u1 = j.d2 / j.v - u * u;
    const double u2 = j.d3 / j.v - 3.0 * u * j.d2 / j.v + 2.0 * u * u * u;
    return std::array<double, 3>{u, u1, u2};
  };
  const auto rf = logs(f), rh = logs(h);
  const double L1 = k1 * rf[0] + k2 * rh[0];
  const double L2 = k1 * rf[1] + k2 * rh[1];
  const double L3 = k1 * rf[2] + k2 * rh[2];
  const double a = std::pow(f.v, k1) * std::pow(h.v, k2);
  const double a1 = a * L1;
  const double a2 = a * (L2 + L1 * L1);
  const double a3 = a * (L3 + 3.0 * L1 * L2 + L1 * L1 * L1);
  const double rho = rf[0], rho1 = rf[1], rho2 = rf[2];
  const double b = -0.5 * a1 + rho * a;
  const double b1 = -0.5 * a2 + rho1 * a + rho * a1;
  const double b2 = -0.5 * a3 + rho2 * a + 2.0 * rho1 * a1 + rho * a2;
  const double c = -b1 + rho * b;
  const double c1 = -b2 + rho1 * b + rho * b1;
  const double G = b * g.v + 0.5 * c1 - 0.5 * (a1 * g.v + a * g.d1);
  const double D = b * b - a * (c - a * g.v);
  return {a, b, c, G, D};
}

double PohozaevCoeffs::a(double r) const {
  if (constants_) return std::pow(r, constants_->q);
  return generic(r).a;
}

double PohozaevCoeffs::b(double r) const {
  if (constants_) return 2.0 * (params_.dim - 1.0) / (params_.p + 3.0) * std::pow(r, constants_->q - 1.0);
  return generic(r).b;
}

double PohozaevCoeffs::c(double r) const {
  if (constants_) {
    const double n = params_.dim, p = params_.p;
    return 2.0 * (n - 1.0) * (n + 2.0 - (n - 2.0) * p) / ((p + 3.0) * (p + 3.0)) * std::pow(r, constants_->q - 2.0);
  }
  return generic(r).c;
}

double PohozaevCoeffs::G(double r) const {
  if (constants_) {
    const auto& k = *constants_;
    const double s = params_.p + 3.0;
    return std::pow(r, k.q - 3.0) * (k.A + k.B * std::pow(r, 2.0 - params_.alpha) + k.C * r * r) /
           (2.0 * s * s * s);
  }
  return generic(r).G;
}

double PohozaevCoeffs::D(double r) const {
  if (constants_) {
    const double av = a(r), bv = b(r);
    return bv * bv - av * (c(r) - av * g(r));
  }
  return generic(r).D;
}

namespace {

// int_0^r of F with a power-law head below 1e-14 r. Panels are split at sign
// changes of `kink` so that |g| is smooth on every piece.
double integral_from_zero(const quad::Integrand& F, double r, const quad::Integrand& kink = nullptr) {
  const double eps = 1e-14 * r;
  double sum = quad::power_law_head(F, eps);
  if (!kink) return sum + quad::geometric_panels(F, eps, r, 1e-12);
  std::vector<double> cuts{eps};
  for (double lo = eps; lo < r;) {
    const double hi = std::min(2.0 * lo, r);
    double x0 = lo, s0 = kink(lo);
    for (int k = 1; k <= 16; ++k) {
      const double x1 = lo + (hi - lo) * k / 16.0, s1 = kink(x1);
      if ((s0 < 0.0) != (s1 < 0.0)) {
        double a = x0, b = x1;
        for (int it = 0; it < 100 && b - a > 1e-15 * b; ++it) {
          const double m = 0.5 * (a + b);
          ((kink(m) < 0.0) == (s0 < 0.0) ? a : b) = m;
        }
        cuts.push_back(0.5 * (a + b));
      }
      x0 = x1;
      s0 = s1;
    }
    cuts.push_back(hi);
    lo = hi;
  }
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) sum += Kronrod::integrate(F, cuts[i], cuts[i + 1], 3, 1e-12);
  return sum;
}

}  // namespace

double PohozaevCoeffs::U(double r) const {
  if (constants_) {
    const double n = params_.dim, gamma = params_.gamma, alpha = params_.alpha, omega = params_.omega;
    auto F = [&](double t) { return omega * std::pow(t, n) / n - gamma * std::pow(t, n - alpha) / (n - alpha); };
    const double turn = gamma > 0.0 ? std::pow(gamma / omega, 1.0 / alpha) : 0.0;
    const double abs_g = r <= turn ? -F(r) : F(r) - 2.0 * F(turn);
    return (abs_g + std::pow(r, n) / n) / std::pow(r, n - 1.0);
  }
  const double integral = integral_from_zero([this](double t) { return f(t) * (std::abs(g(t)) + h(t)); }, r,
                                             [this](double t) { return g(t); });
  return integral / f(r);
}

double PohozaevCoeffs::V(double r) const {
  if (constants_) return r / params_.dim;
  return integral_from_zero([this](double t) { return f(t) * h(t); }, r) / f(r);
}

PohozaevCoeffs coeffs(const FghTriple& triple, const Params& params, std::optional<CoeffMode> force) {
  const CoeffMode mode =
      force ? *force : (triple.kind == TripleKind::Special ? CoeffMode::ClosedForm : CoeffMode::Generic);
  return PohozaevCoeffs(triple, params, mode);
}

double J(const PohozaevCoeffs& co, const RadialProfile& profile, double r) {
  const auto s = profile.eval(r);
  const double av = co.a(r), p = co.params().p;
  const double phi = s.value, d = s.deriv;
  return 0.5 * av * d * d + co.b(r) * d * phi + 0.5 * co.c(r) * phi * phi - 0.5 * av * co.g(r) * phi * phi +
         av * co.h(r) * std::pow(std::abs(phi), p + 1.0) / (p + 1.0);
}

namespace {

// Richardson-combined central difference of fn at r with step delta.
template <class Fn>
double derivative(Fn fn, double r, double delta) {
  const double d1 = (fn(r + delta) - fn(r - delta)) / (2.0 * delta);
  const double d2 = (fn(r + 0.5 * delta) - fn(r - 0.5 * delta)) / delta;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

IdentityReport verify_identity(const PohozaevCoeffs& co, const RadialProfile& profile, std::span<const double> grid) {
  IdentityReport rep;
  auto Jr = [&](double r) { return J(co, profile, r); };
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double r = grid[i];
    const double delta = 0.25 * std::min(r - grid[i - 1], grid[i + 1] - r);
    if (r - delta < profile.r_first()) continue;
    const double phi = profile.value(r);
    const double rhs = co.G(r) * phi * phi;
    const double res = std::abs(derivative(Jr, r, delta) - rhs) / (1.0 + std::abs(rhs));
    ++rep.points;
    if (res > rep.max_residual || !std::isfinite(res)) {
      rep.max_residual = res;
      rep.r_at_max = r;
    }
  }
  return rep;
}

IdentityReport verify_identity(const PohozaevCoeffs& co, const RadialProfile& profile) {
  return verify_identity(co, profile, profile.grid());
}

EtaReport eta_and_X(const PohozaevCoeffs& co, const RadialProfile& lower, const RadialProfile& upper,
                    std::span<const double> grid) {
  if (lower.phi0() > upper.phi0())
    throw Error(Errc::InvalidArgument, "the first profile must have the smaller value at the origin");
  const double p = co.params().p;
  const double lo = std::max(lower.r_first(), upper.r_first());
  auto beyond = [](const RadialProfile& pr, double r) { return !pr.tail() && r > pr.r_last(); };
  std::vector<double> rs;
  for (double r : grid) {
    if (r < lo || beyond(lower, r) || beyond(upper, r)) continue;
    if (!(lower.value(r) > 0.0) || !(upper.value(r) > 0.0)) break;
    rs.push_back(r);
  }
  EtaReport rep;
  rep.r = rs;
  if (rs.empty()) return rep;

  auto eta = [&](double r) { return upper.value(r) / lower.value(r); };
  auto integrand = [&](double t) {
    const double phi = lower.value(t), psi = upper.value(t);
    return co.f(t) * co.h(t) * (std::pow(psi / phi, p - 1.0) - 1.0) * std::pow(phi, p) * psi;
  };
  // Head on [0, r_first]: the integrand is f times a quantity that is
  // constant to leading order.
  const double r1 = rs.front();
  const double head =
      integrand(r1) / co.f(r1) * quad::power_law_head([&](double t) { return co.f(t); }, r1);
  const auto cumulative = quad::simpson_cumulative(rs, integrand);

  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double r = rs[i];
    const auto a = lower.eval(r), b = upper.eval(r);
    rep.eta.push_back(b.value / a.value);
    rep.eta_prime.push_back((b.deriv * a.value - b.value * a.deriv) / (a.value * a.value));
    rep.eta_prime_integral.push_back(-(head + cumulative[i]) / (a.value * a.value * co.f(r)));
    rep.X.push_back(rep.eta.back() * rep.eta.back() * J(co, lower, r) - J(co, upper, r));
  }
  auto X = [&](double r) {
    const double e = eta(r);
    return e * e * J(co, lower, r) - J(co, upper, r);
  };
  for (std::size_t i = 1; i + 1 < rs.size(); ++i) {
    const double r = rs[i];
    const double delta = 0.25 * std::min(r - rs[i - 1], rs[i + 1] - r);
    if (r - delta < lo) continue;
    const double jl = J(co, lower, r);
    const double expected = 2.0 * rep.eta[i] * rep.eta_prime[i] * jl;
    // X is a difference of two nearly equal terms near the origin; rounding
    // in them bounds how well X' can be differenced.
    const double noise = 1e3 * std::numeric_limits<double>::epsilon() *
                         (rep.eta[i] * rep.eta[i] * std::abs(jl) + std::abs(J(co, upper, r))) / delta;
    const double res = std::abs(derivative(X, r, delta) - expected) / (1.0 + std::abs(expected) + noise);
    if (res > rep.x_residual) {
      rep.x_residual = res;
      rep.x_residual_at = r;
    }
  }
  return rep;
}

double eta_prime_agreement(const EtaReport& report, double r_lo, double r_hi) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < report.r.size(); ++i) {
    if (report.r[i] < r_lo || report.r[i] > r_hi) continue;
    diff = std::max(diff, std::abs(report.eta_prime[i] - report.eta_prime_integral[i]));
    scale = std::max(scale, std::abs(report.eta_prime[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace gslab
