#include <cmath>
#include <vector>

#include "gslab/profile.hpp"
#include "support.hpp"

using namespace gslab;
using doctest::Approx;

namespace {

// Closed-form soliton of phi'' - omega phi + phi^p = 0 and its derivative.
double sech_value(double w, double p, double r) {
  return std::pow((p + 1) * w / 2, 1 / (p - 1)) * std::pow(1 / std::cosh((p - 1) * std::sqrt(w) * r / 2), 2 / (p - 1));
}

}  // namespace

TEST_CASE("profile grid is geometric then uniform") {
  const auto g = profile_grid(1e-6, 10.0, 1.05, 0.1);
  CHECK(g.front() == 1e-6);
  CHECK(g.back() == 10.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(g[1] / g[0] == Approx(1.05));
  double max_step = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) max_step = std::max(max_step, g[i] - g[i - 1]);
  CHECK(max_step <= 0.1 * (1 + 1e-12));
}

TEST_CASE("soliton samples and interpolation") {
  for (double p : {3.0, 5.0}) {
    for (double w : {0.5, 2.0}) {
      const RadialProfile prof = soliton_1d(w, p);
      CHECK(prof.phi0() == Approx(sech_value(w, p, 0.0)).epsilon(1e-14));
      REQUIRE(prof.tail());
      CHECK(prof.tail()->rate == Approx(std::sqrt(w)).epsilon(1e-6));
      CHECK_NOTHROW(prof.check_ground_state());
      double worst = 0.0;
      for (double r = 0.013; r < 0.9 * prof.r_last(); r += 0.0371)
        worst = std::max(worst, std::abs(prof.value(r) - sech_value(w, p, r)) / prof.phi0());
      CHECK(worst < 1e-9);
      const double r = 1.234;
      const double e = 1e-5;
      const double fd = (sech_value(w, p, r + e) - sech_value(w, p, r - e)) / (2 * e);
      CHECK(prof.eval(r).deriv == Approx(fd).epsilon(1e-8));
      CHECK(soliton_1d_sample(w, p, r).deriv == Approx(fd).epsilon(1e-8));
      // far field from the exponential tail
      const double far = prof.r_last() + 3.0;
      CHECK(prof.value(far) == Approx(sech_value(w, p, far)).epsilon(1e-5));
    }
  }
}

TEST_CASE("equation-implied derivatives") {
  const Params par = Params::unchecked(1, 0.0, 0.5, 1.0, 3.0);
  const double r = 0.8, phi = sech_value(1, 3, r);
  const double dphi = soliton_1d_sample(1, 3, r).deriv;
  CHECK(ode_second(par, r, phi, dphi) == Approx(phi - phi * phi * phi).epsilon(1e-14));
  CHECK(ode_third(par, r, phi, dphi) == Approx(dphi - 3 * phi * phi * dphi).epsilon(1e-14));
  const Params p3 = make_params(3, 1.0, 1.0, 2.0, 3.0);
  CHECK(ode_second(p3, 0.5, 1.0, -0.2) == Approx(-2.0 / 0.5 * -0.2 + (2.0 - 2.0) - 1.0));
}

TEST_CASE("scaling and invariants") {
  const RadialProfile prof = soliton_1d(1.0, 3.0);
  const RadialProfile twice = prof.scaled(2.0);
  CHECK(twice.phi0() == Approx(2 * prof.phi0()));
  CHECK(twice.value(1.0) == Approx(2 * prof.value(1.0)));
  CHECK(twice.tail()->amplitude == Approx(2 * prof.tail()->amplitude));
  CHECK_ERRC(prof.eval(prof.r_first() / 2), Errc::OutOfRange);

  const Params par = Params::unchecked(1, 0.0, 0.5, 1.0, 3.0);
  const RadialProfile bump(par, {0.1, 0.2, 0.3}, {1.0, 1.1, 0.9}, {0.0, 0.0, 0.0}, 1.0, std::nullopt);
  CHECK_ERRC(bump.check_ground_state(), Errc::InvariantViolation);
  const RadialProfile negative(par, {0.1, 0.2, 0.3}, {1.0, 0.5, -0.1}, {-1.0, -1.0, -1.0}, 1.0, std::nullopt);
  CHECK_ERRC(negative.check_ground_state(), Errc::InvariantViolation);
  const RadialProfile no_tail(par, {0.1, 0.2, 0.3}, {1.0, 0.5, 0.2}, {-1.0, -1.0, -1.0}, 1.0, std::nullopt);
  CHECK_ERRC(no_tail.eval(0.5), Errc::OutOfRange);
}
