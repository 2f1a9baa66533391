#include <cmath>
#include <vector>

#include "gslab/assumptions.hpp"
#include "gslab/spectrum.hpp"
#include "support.hpp"

using namespace gslab;
using doctest::Approx;

TEST_CASE("sign change radius for the cubic Coulomb case in 3D") {
  // G r^{3-q} is proportional to A + B r + C r^2 with A = 32, B = 72, C = -288
  // at N = 3, p = 3, gamma = omega = alpha = 1 (by hand from a = r^{8/3}).
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 1.0, 3.0));
  const ConditionReport rep = check_all(par);
  const double kappa = (72.0 + std::sqrt(72.0 * 72.0 + 4 * 288.0 * 32.0)) / (2 * 288.0);
  REQUIRE(rep.g.kappa);
  CHECK(*rep.g.kappa == Approx(kappa).epsilon(1e-12));
  CHECK(rep.g.kind == GStructureKind::SingleSignChange);
  CHECK(rep.overall() == ConditionVerdict::Holds);
  CHECK(rep.energy_route == "bu");
  CHECK(rep.g_route == "single");
}

TEST_CASE("one dimension: G negative everywhere") {
  const Params par = with_omega0(make_params(1, 1.0, 0.5, 2.0, 3.0));
  const ConditionReport rep = check_all(par);
  REQUIRE(rep.g.kappa);
  CHECK(*rep.g.kappa == 0.0);
  CHECK(rep.overall() == ConditionVerdict::Holds);
  bool seen = false;
  for (const auto& s : rep.limits.sequences)
    if (s.name == "b V") {
      CHECK(s.identically_zero);
      seen = true;
    }
  CHECK(seen);
}

TEST_CASE("two dimensions use the D routes") {
  const Params par = with_omega0(make_params(2, 1.0, 0.5, 1.0, 10.0));
  const ConditionReport rep = check_all(par);
  CHECK(rep.overall() == ConditionVerdict::Holds);
  CHECK(rep.energy_route == "d");
  CHECK(rep.g_route == "zeros");
  REQUIRE(rep.g.zeros.size() == 2);
  const auto co = coeffs(special_fgh(par), par);
  for (const GZero& z : rep.g.zeros) {
    CHECK(std::abs(co.G(z.r)) < 1e-9 * std::abs(co.G(z.r * 1.1)));
    CHECK(z.D < 0.0);
    CHECK(z.D == Approx(co.D(z.r)));
  }
  for (const auto& s : rep.limits.sequences)
    if (s.name == "D / a")
      for (double v : s.values) CHECK(v < 0.0);
}

TEST_CASE("fitted limit exponents") {
  const Params par = with_omega0(make_params(3, 1.0, 1.5, 1.0, 3.0));
  const auto co = coeffs(special_fgh(par), par);
  const LimitReport lim = limit_conditions(co, par);
  const double q = 2.0 * 2 * 4 / 6;
  bool seen = false;
  for (const auto& s : lim.sequences)
    if (s.name == "a U V") {
      CHECK(s.exponent == Approx(q + 2 - 1.5).epsilon(0.01));
      CHECK(s.verdict == ConditionVerdict::Holds);
      seen = true;
    }
  CHECK(seen);
  CHECK(lim.origin_limits == ConditionVerdict::Holds);

  // doubling the sampled range leaves the fit stable
  LimitOptions wide;
  wide.k_max = 80;
  const LimitReport lim2 = limit_conditions(co, par, wide);
  for (std::size_t i = 0; i < lim.sequences.size(); ++i)
    if (!lim.sequences[i].identically_zero)
      CHECK(std::abs(lim.sequences[i].exponent - lim2.sequences[i].exponent) < 0.05);
}

TEST_CASE("generic path agrees with the closed form in 3D") {
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 1.0, 3.0));
  FghTriple t = special_fgh(par);
  t.kind = TripleKind::Custom;
  const ConditionReport rep = check_all(t, par);
  CHECK(rep.overall() == ConditionVerdict::Holds);
  REQUIRE(rep.g.kappa);
  CHECK(*rep.g.kappa == Approx(*check_all(par).g.kappa).epsilon(1e-8));
}

TEST_CASE("generic path rejects a non-positive h") {
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 1.0, 3.0));
  FghTriple t = special_fgh(par);
  t.kind = TripleKind::Custom;
  t.h = [](double r) { return Jet{1.0 - r, -1.0, 0.0, 0.0}; };
  const ConditionReport rep = check_all(t, par);
  CHECK(rep.verdict(Condition::Regularity) == ConditionVerdict::Fails);
  CHECK(rep.overall() != ConditionVerdict::Holds);
}

TEST_CASE("condition names") {
  CHECK(std::string(to_string(Condition::OriginEnergy)) == "origin_energy");
  CHECK(std::string(to_string(Condition::GSign)) == "g_sign");
}
