#include <cmath>
#include <vector>

#include "gslab/pohozaev.hpp"
#include "gslab/shooting.hpp"
#include "gslab/spectrum.hpp"
#include "support.hpp"

using namespace gslab;
using doctest::Approx;

namespace {

// Coefficients for f = r^{N-1}, h = 1 worked out by hand from a = r^q:
// b = beta1 r^{q-1}, c = beta2 r^{q-2}.
struct PowerCoeffs {
  double N, gamma, alpha, omega, q, beta1, beta2;

  explicit PowerCoeffs(const Params& par)
      : N(par.dim), gamma(par.gamma), alpha(par.alpha), omega(par.omega) {
    q = 2 * (N - 1) * (par.p + 1) / (par.p + 3);
    beta1 = N - 1 - q / 2;
    beta2 = beta1 * (N - q);
  }
  double a(double r) const { return std::pow(r, q); }
  double b(double r) const { return beta1 * std::pow(r, q - 1); }
  double c(double r) const { return beta2 * std::pow(r, q - 2); }
  double G(double r) const {
    const double g = omega - gamma * std::pow(r, -alpha);
    const double dag = omega * q * std::pow(r, q - 1) - gamma * (q - alpha) * std::pow(r, q - alpha - 1);
    return b(r) * g + beta2 * (q - 2) / 2 * std::pow(r, q - 3) - dag / 2;
  }
  double D(double r) const {
    const double g = omega - gamma * std::pow(r, -alpha);
    return b(r) * b(r) - a(r) * (c(r) - a(r) * g);
  }
};

}  // namespace

TEST_CASE("closed-form coefficients match the hand derivation") {
  for (const Params& par : {make_params(1, 1.0, 0.5, 1.0, 3.0), make_params(2, 1.0, 1.0, 1.0, 3.0),
                            make_params(3, 1.0, 1.0, 1.0, 3.0), make_params(3, 0.5, 1.5, 2.0, 2.0),
                            make_params(4, 2.0, 0.3, 0.7, 2.5)}) {
    const PowerCoeffs ref(par);
    const auto co = coeffs(special_fgh(par), par);
    CHECK(co.mode() == CoeffMode::ClosedForm);
    CHECK(closed_form_constants(par).q == Approx(ref.q));
    for (double r : {1e-3, 0.05, 0.3, 1.0, 2.7, 10.0}) {
      CHECK(co.a(r) == Approx(ref.a(r)).epsilon(1e-12));
      CHECK(co.b(r) == Approx(ref.b(r)).epsilon(1e-12).scale(ref.a(r) / r));
      CHECK(co.c(r) == Approx(ref.c(r)).epsilon(1e-12).scale(ref.a(r) / (r * r)));
      CHECK(co.G(r) == Approx(ref.G(r)).epsilon(1e-10));
      CHECK(co.D(r) == Approx(ref.D(r)).epsilon(1e-10));
    }
  }
}

TEST_CASE("N = 1 coefficients and G") {
  const Params par = make_params(1, 1.3, 0.5, 2.0, 3.0);
  const auto co = coeffs(special_fgh(par), par);
  for (double r : {0.01, 0.5, 4.0}) {
    CHECK(co.a(r) == 1.0);
    CHECK(co.b(r) == 0.0);
    CHECK(co.c(r) == 0.0);
    CHECK(co.G(r) == Approx(-1.3 * 0.5 / (2 * std::pow(r, 1.5))));
  }
}

TEST_CASE("U and V for the Coulomb case in three dimensions") {
  // V = r/3; U = 1/2 on (0, 1] for omega = gamma = alpha = 1
  const Params par = make_params(3, 1.0, 1.0, 1.0, 3.0);
  const auto co = coeffs(special_fgh(par), par);
  for (double r : {0.01, 0.3, 0.9}) {
    CHECK(co.V(r) == Approx(r / 3).epsilon(1e-10));
    CHECK(co.U(r) == Approx(0.5).epsilon(1e-8));
  }
}

TEST_CASE("generic chain needs third derivatives") {
  const Params par = make_params(3, 1.0, 1.0, 1.0, 3.0);
  FghTriple t = special_fgh(par);
  t.kind = TripleKind::Custom;
  t.derivative_order = 1;
  CHECK_ERRC(coeffs(t, par), Errc::DerivativeUnavailable);
  t.derivative_order = 3;
  CHECK(coeffs(t, par).mode() == CoeffMode::Generic);
}

TEST_CASE("J vanishes identically on the potential-free 1D soliton") {
  // G = 0 when N = 1 and gamma = 0, so J is constant and tends to 0.
  const Params par = Params::unchecked(1, 0.0, 0.5, 1.0, 3.0);
  const RadialProfile prof = soliton_1d(1.0, 3.0);
  const auto co = coeffs(special_fgh(par), par);
  for (double r : {0.01, 0.5, 2.0, 6.0}) CHECK(std::abs(J(co, prof, r)) < 1e-10);
}

TEST_CASE("Pohozaev identity on a ground state and a perturbed control") {
  const Params par = with_omega0(make_params(2, 1.0, 1.0, 2.0, 3.0));
  const RadialProfile prof = solve_ground_state(par);
  const auto co = coeffs(special_fgh(par), par);
  const IdentityReport id = verify_identity(co, prof);
  const IdentityReport bad = verify_identity(co, prof.scaled(1.01));
  CHECK(id.max_residual < 1e-6);
  CHECK(bad.max_residual > 100 * id.max_residual);
  double jmin = 0.0;
  for (double r : prof.grid()) jmin = std::min(jmin, J(co, prof, r));
  CHECK(jmin > -1e-8);
}

TEST_CASE("D for the planar Coulomb cubic") {
  // N = 2, p = 3, omega = gamma = alpha = 1: D = r^{2/3} (-4 + 36 r^2 - 36 r) / 36
  const Params par = Params::unchecked(2, 1.0, 1.0, 1.0, 3.0);
  const auto co = coeffs(special_fgh(par), par);
  for (double r : {1e-3, 0.2, 1.0, 1.618, 7.0}) {
    const double want = std::cbrt(r * r) * (-4 + 36 * r * r - 36 * r) / 36;
    CHECK(co.D(r) == Approx(want).epsilon(1e-12).scale(std::cbrt(r * r)));
  }
}

TEST_CASE("eta and X for two solutions of the same equation") {
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 1.0, 3.0));
  const RadialProfile lower = solve_ground_state(par);
  const auto co = coeffs(special_fgh(par), par);

  const EtaReport same = eta_and_X(co, lower, lower, lower.grid());
  for (std::size_t i = 0; i < same.r.size(); ++i) {
    CHECK(same.eta[i] == 1.0);
    CHECK(same.X[i] == Approx(0.0).scale(1.0));
  }

  // A crossing shot from a larger phi(0) stays above the ground state up to
  // its first zero.
  const ShootSettings s;
  const double phi0 = 1.05 * lower.phi0();
  const SeriesStart st = series_start(par, phi0, start_radius(par, phi0, s));
  const ShootOutcome shot = integrate_outward(par, st, default_r_max(par, s), 1e-12, s);
  REQUIRE(shot.kind == ShotKind::Crossing);
  const EtaReport rep = eta_and_X(co, lower, shot.profile, lower.grid());
  REQUIRE(rep.r.size() > 50);
  CHECK(eta_prime_agreement(rep, 1e-3, 0.9 * rep.r.back()) < 1e-4);
  CHECK(rep.x_residual < 1e-4);
  CHECK(rep.eta.front() == Approx(1.05).epsilon(1e-6));
  CHECK_ERRC(eta_and_X(co, shot.profile, lower, lower.grid()), Errc::InvalidArgument);
}
