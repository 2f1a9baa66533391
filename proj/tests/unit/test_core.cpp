#include <cmath>
#include <limits>
#include <numbers>

#include "gslab/core.hpp"
#include "support.hpp"

using namespace gslab;
using doctest::Approx;

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(make_params(3, 1.0, 1.0, 1.0, 3.0));
  CHECK_ERRC(make_params(0, 1.0, 1.0, 1.0, 3.0), Errc::DimensionInvalid);
  CHECK_ERRC(make_params(3, 0.0, 1.0, 1.0, 3.0), Errc::NonpositiveGamma);
  CHECK_ERRC(make_params(3, -1.0, 1.0, 1.0, 3.0), Errc::NonpositiveGamma);
  CHECK_ERRC(make_params(3, 1.0, 2.0, 1.0, 3.0), Errc::AlphaOutOfRange);
  CHECK_ERRC(make_params(3, 1.0, 3.0, 1.0, 3.0), Errc::AlphaOutOfRange);
  CHECK_ERRC(make_params(1, 1.0, 1.0, 1.0, 3.0), Errc::AlphaOutOfRange);
  CHECK_ERRC(make_params(2, 1.0, 0.0, 1.0, 3.0), Errc::AlphaOutOfRange);
  CHECK_ERRC(make_params(3, 1.0, 1.0, 1.0, 5.0), Errc::ExponentOutOfRange);
  CHECK_ERRC(make_params(3, 1.0, 1.0, 1.0, 1.0), Errc::ExponentOutOfRange);
  CHECK_ERRC(make_params(3, std::nan(""), 1.0, 1.0, 3.0), Errc::NonFiniteInput);
  CHECK_ERRC(make_params(3, 1.0, 1.0, INFINITY, 3.0), Errc::NonFiniteInput);
  CHECK_NOTHROW(make_params(2, 1.0, 1.5, 1.0, 40.0));
  CHECK_NOTHROW(make_params(4, 1.0, 1.5, 1.0, 2.9));
}

TEST_CASE("exponent bound and sphere area") {
  CHECK(exponent_upper_bound(3) == 5.0);
  CHECK(exponent_upper_bound(4) == 3.0);
  CHECK(std::isinf(exponent_upper_bound(1)));
  CHECK(std::isinf(exponent_upper_bound(2)));
  CHECK(sphere_area(1) == Approx(2.0));
  CHECK(sphere_area(2) == Approx(2.0 * std::numbers::pi));
  CHECK(sphere_area(3) == Approx(4.0 * std::numbers::pi));
  CHECK(sphere_area(4) == Approx(2.0 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("frequency threshold") {
  Params par = make_params(3, 1.0, 1.0, 1.0, 3.0);
  CHECK_ERRC(require_above_threshold(par), Errc::Omega0Unknown);
  par.omega0 = 0.25;
  CHECK_NOTHROW(require_above_threshold(par));
  par.omega0 = 1.0;
  CHECK_ERRC(require_above_threshold(par), Errc::OmegaBelowThreshold);
  CHECK_NOTHROW(require_above_threshold(Params::unchecked(1, 0.0, 0.5, 1.0, 3.0)));
}

TEST_CASE("special triple derivatives match finite differences") {
  const Params par = make_params(3, 0.7, 1.3, 2.0, 3.0);
  const FghTriple t = special_fgh(par);
  CHECK(t.kind == TripleKind::Special);
  CHECK(triple_positive(t));
  const double r = 0.7, e = 1e-4;
  for (const JetFunction* fn : {&t.f, &t.g, &t.h}) {
    const Jet j = (*fn)(r), jp = (*fn)(r + e), jm = (*fn)(r - e);
    CHECK(j.d1 == Approx((jp.v - jm.v) / (2 * e)).epsilon(1e-7));
    CHECK(j.d2 == Approx((jp.d1 - jm.d1) / (2 * e)).epsilon(1e-7));
    CHECK(j.d3 == Approx((jp.d2 - jm.d2) / (2 * e)).epsilon(1e-7));
  }
  CHECK(t.f(r).v == Approx(r * r));
  CHECK(t.g(r).v == Approx(2.0 - 0.7 * std::pow(r, -1.3)));
  CHECK(t.h(r).v == 1.0);
}

TEST_CASE("unit-frequency rescaling") {
  const Params par = make_params(3, 0.8, 1.5, 4.0, 3.0);
  const UnitOmegaMap m = rescale_to_unit_omega(par);
  CHECK(m.unit.omega == 1.0);
  CHECK(m.unit.gamma == Approx(0.8 * std::pow(4.0, -0.25)));
  CHECK(m.amplitude == Approx(2.0));
  CHECK(m.spatial == Approx(2.0));
}
