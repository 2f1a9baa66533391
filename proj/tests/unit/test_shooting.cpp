#include <cmath>
#include <vector>

#include "gslab/quadrature.hpp"
#include "gslab/shooting.hpp"
#include "gslab/spectrum.hpp"
#include "gslab/stability.hpp"
#include "support.hpp"

using namespace gslab;
using doctest::Approx;

TEST_CASE("series start reproduces the closed-form soliton") {
  const Params par = Params::unchecked(1, 0.0, 0.5, 1.0, 3.0);
  const double r0 = 0.01;
  const SeriesStart s = series_start(par, std::sqrt(2.0), r0);
  CHECK(s.value == Approx(std::sqrt(2.0) / std::cosh(r0)).epsilon(1e-14));
  CHECK(s.deriv == Approx(-std::sqrt(2.0) * std::tanh(r0) / std::cosh(r0)).epsilon(1e-12));
}

TEST_CASE("series leading coefficients") {
  const Params par = make_params(3, 0.7, 1.2, 2.0, 3.0);
  const double phi0 = 1.5;
  const SeriesStart s = series_start(par, phi0, 1e-4);
  bool seen_potential = false, seen_quadratic = false;
  for (const SeriesTerm& t : s.terms) {
    if (t.gamma_order == 1 && t.omega_order == 0) {
      // c r^{2-alpha} solves c (2-alpha)(N-alpha) = -gamma phi0
      CHECK(t.coeff == Approx(-0.7 * phi0 / ((2 - 1.2) * (3 - 1.2))));
      CHECK(t.exponent == Approx(0.8));
      seen_potential = true;
    }
    if (t.gamma_order == 0 && t.omega_order == 1) {
      CHECK(t.coeff == Approx((2.0 * phi0 - phi0 * phi0 * phi0) / 6.0));
      seen_quadratic = true;
    }
  }
  CHECK(seen_potential);
  CHECK(seen_quadratic);
  CHECK(s.truncation < 1e-13);
}

TEST_CASE("shot classification and bracketing") {
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 1.0, 3.0));
  CHECK(classify_shot(par, 10.0) == ShotKind::Crossing);
  CHECK(classify_shot(par, 0.5) == ShotKind::Rebound);
  const Bracket b = auto_bracket(par);
  CHECK(b.lo < b.hi);
  CHECK(classify_shot(par, b.lo) == ShotKind::Rebound);
  CHECK(classify_shot(par, b.hi) == ShotKind::Crossing);
  CHECK_ERRC(find_ground_state(par, {b.hi, b.hi * 2}, 1e-10), Errc::InvalidBracket);
}

TEST_CASE("solver preconditions") {
  CHECK_ERRC(solve_ground_state(make_params(3, 1.0, 1.0, 1.0, 3.0)), Errc::Omega0Unknown);
  Params below = make_params(3, 1.0, 1.0, 0.2, 3.0);
  below.omega0 = 0.25;
  CHECK_ERRC(solve_ground_state(below), Errc::OmegaBelowThreshold);
}

TEST_CASE("potential-free ground states match known values") {
  // Townes profile (N = 2, p = 3): R(0) = 2.20620086, mass 11.70089652
  const Params two = Params::unchecked(2, 0.0, 1.0, 1.0, 3.0);
  const RadialProfile r2 = solve_ground_state(two);
  CHECK(r2.phi0() == Approx(2.2062008659).epsilon(1e-9));
  CHECK(functionals(two, r2).mass == Approx(11.7008965).epsilon(1e-8));
  // cubic N = 3: Q(0) = 4.3373876
  const Params three = Params::unchecked(3, 0.0, 1.0, 1.0, 3.0);
  CHECK(solve_ground_state(three).phi0() == Approx(4.33738768).epsilon(1e-8));
}

TEST_CASE("omega rescaling of ground states") {
  // phi_omega(x) = A phi_1(s x) with gamma_1 = omega^{(alpha-2)/2} gamma
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 3.0, 3.0));
  const UnitOmegaMap m = rescale_to_unit_omega(par);
  const Params unit = with_omega0(make_params(3, m.unit.gamma, 1.0, 1.0, 3.0));
  const RadialProfile a = solve_ground_state(par), b = solve_ground_state(unit);
  CHECK(a.phi0() == Approx(m.amplitude * b.phi0()).epsilon(1e-10));
  CHECK(a.value(0.9) == Approx(m.amplitude * b.value(0.9 * m.spatial)).epsilon(1e-9));
}

TEST_CASE("converged profile satisfies the equation") {
  for (const Params& raw : {make_params(3, 1.0, 1.0, 1.0, 3.0), make_params(2, 0.3, 1.5, 3.0, 4.0),
                            make_params(1, 0.5, 0.5, 2.0, 3.0)}) {
    const Params par = with_omega0(raw);
    const RadialProfile prof = solve_ground_state(par);
    CHECK_NOTHROW(prof.check_ground_state());
    const OdeResidual res = ode_residual(par, prof);
    CHECK(res.max_residual < 1e-8);
    CHECK(res.points > 100);
  }
}

TEST_CASE("scan of initial values has one transition") {
  const Params par = with_omega0(make_params(2, 1.0, 1.0, 2.0, 3.0));
  const double star = solve_ground_state(par).phi0();
  std::vector<double> phi0;
  for (int i = 0; i < 40; ++i) phi0.push_back(star * (0.3 + 0.05 * i));
  const ScanResult s = scan_initial_values(par, phi0);
  CHECK(s.transitions == 1);
  CHECK(s.reverse_transitions == 0);
  CHECK(s.kinds.front() == ShotKind::Rebound);
  CHECK(s.kinds.back() == ShotKind::Crossing);
}

TEST_CASE("derivative matches its integral representation") {
  // r^{N-1} phi'(r) = int_0^r t^{N-1} ((omega - gamma t^{-alpha}) phi - phi^p) dt
  const Params par = with_omega0(make_params(2, 1.0, 1.0, 2.0, 3.0));
  const RadialProfile prof = solve_ground_state(par);
  auto F = [&](double t) {
    const double phi = prof.value(t);
    return t * ((par.omega - par.gamma / t) * phi - std::pow(phi, par.p));
  };
  const double r1 = prof.r_first();
  // F tends to -gamma phi(0) at the origin
  const double head = F(r1) * r1;
  double worst = 0.0;
  for (double r = 0.01; r <= 1.0; r += 0.03) {
    const double integral = head + quad::geometric_panels(F, r1, r);
    worst = std::max(worst, std::abs(integral / r - prof.eval(r).deriv));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("flux vanishes at the origin with the expected order") {
  // r^{N-1} phi' ~ r^{N-alpha} as r -> 0
  for (const Params& raw : {make_params(2, 1.0, 1.0, 2.0, 3.0), make_params(3, 1.0, 1.5, 2.0, 3.0),
                            make_params(2, 0.5, 0.5, 2.0, 3.0)}) {
    const Params par = with_omega0(raw);
    const RadialProfile prof = solve_ground_state(par);
    auto flux = [&](double r) { return std::abs(std::pow(r, par.dim - 1) * prof.eval(r).deriv); };
    const double r_a = 1e-4, r_b = 1e-5;
    const double order = std::log(flux(r_a) / flux(r_b)) / std::log(r_a / r_b);
    const double want = std::min<double>(par.dim - par.alpha, par.dim);
    CHECK(order == Approx(want).epsilon(0.2));
  }
}

TEST_CASE("tail rate is close to sqrt(omega) for alpha <= 1") {
  for (const Params& raw : {make_params(3, 1.0, 1.0, 1.0, 3.0), make_params(2, 0.5, 0.5, 2.0, 3.0),
                            make_params(1, 0.5, 0.5, 4.0, 5.0)}) {
    const Params par = with_omega0(raw);
    const RadialProfile prof = solve_ground_state(par);
    REQUIRE(prof.tail());
    const double k = std::sqrt(par.omega);
    CHECK(prof.tail()->rate >= 0.8 * k);
    CHECK(prof.tail()->rate <= 1.2 * k);
  }
}
