#include <cmath>
#include <vector>

#include "gslab/shooting.hpp"
#include "gslab/spectrum.hpp"
#include "support.hpp"

using namespace gslab;
using doctest::Approx;

namespace {

ExtrapolatedEigenvalue extrapolated(int dim, const RadialPotential& W, int j, int index, GridSpec g) {
  double raw[3];
  for (int i = 0; i < 3; ++i) {
    raw[i] = lowest_eigenpairs(build_sector(dim, W, j, g), index + 1)[index].value;
    g.h /= 2;
  }
  return richardson(raw[0], raw[1], raw[2]);
}

}  // namespace

TEST_CASE("spherical harmonics") {
  CHECK(laplace_beltrami_eigenvalue(3, 2) == 6.0);
  CHECK(laplace_beltrami_multiplicity(3, 2) == 5);
  CHECK(laplace_beltrami_eigenvalue(2, 3) == 9.0);
  CHECK(laplace_beltrami_multiplicity(2, 3) == 2);
  CHECK(laplace_beltrami_multiplicity(2, 0) == 1);
  CHECK(laplace_beltrami_eigenvalue(4, 1) == 3.0);
  CHECK(laplace_beltrami_multiplicity(4, 1) == 4);
  CHECK(laplace_beltrami_multiplicity(4, 2) == 9);
  CHECK(laplace_beltrami_eigenvalue(1, 1) == 0.0);
  CHECK(max_sector(1) == 1);
}

TEST_CASE("Richardson extrapolation of a second-order sequence") {
  const auto e = richardson(1.0 + 0.3 * 0.01, 1.0 + 0.3 * 0.0025, 1.0 + 0.3 * 0.000625);
  CHECK(e.value == Approx(1.0).epsilon(1e-13));
  CHECK(e.order == Approx(2.0));
  CHECK(e.raw.size() == 3);
}

TEST_CASE("harmonic oscillator sectors") {
  // -Laplacian + r^2: levels 2(2n + l) + N
  const RadialPotential W{[](double r) { return r * r; }, 0.0, 0.0};
  const GridSpec g{0.02, 8.0};
  CHECK(extrapolated(3, W, 0, 0, g).value == Approx(3.0).epsilon(1e-6));
  CHECK(extrapolated(3, W, 0, 1, g).value == Approx(7.0).epsilon(1e-6));
  CHECK(extrapolated(3, W, 1, 0, g).value == Approx(5.0).epsilon(1e-6));
  CHECK(extrapolated(3, W, 2, 0, g).value == Approx(7.0).epsilon(1e-6));
  CHECK(extrapolated(2, W, 0, 0, g).value == Approx(2.0).epsilon(1e-6));
  CHECK(extrapolated(2, W, 1, 0, g).value == Approx(4.0).epsilon(1e-6));
  CHECK(extrapolated(1, W, 0, 0, g).value == Approx(1.0).epsilon(1e-6));
  CHECK(extrapolated(1, W, 1, 0, g).value == Approx(3.0).epsilon(1e-6));
}

TEST_CASE("hydrogen thresholds") {
  // -Laplacian - gamma/r: omega0 = gamma^2/4 in 3D and gamma^2 in 2D.
  CHECK(omega0(make_params(3, 1.0, 1.0, 1.0, 3.0)).value == Approx(0.25).epsilon(1e-5));
  CHECK(omega0(make_params(3, 3.0, 1.0, 1.0, 3.0)).value == Approx(2.25).epsilon(1e-5));
  CHECK(omega0(make_params(2, 0.5, 1.0, 1.0, 3.0)).value == Approx(0.25).epsilon(1e-4));
  // scaling omega0(gamma) = gamma^{2/(2-alpha)} omega0(1)
  const double base = omega0(make_params(3, 1.0, 1.5, 1.0, 3.0)).value;
  CHECK(omega0(make_params(3, 2.0, 1.5, 1.0, 3.0)).value == Approx(16.0 * base).epsilon(1e-4));
}

TEST_CASE("threshold enforcement") {
  CHECK_ERRC(with_omega0(make_params(3, 1.0, 1.0, 0.2, 3.0)), Errc::OmegaBelowThreshold);
  CHECK(with_omega0(make_params(3, 1.0, 1.0, 0.3, 3.0)).omega0.has_value());
}

TEST_CASE("grid checks") {
  const RadialPotential W{[](double) { return 0.0; }, 1.0, 1.0};
  CHECK_ERRC(build_sector(3, W, 0, {0.5, 10.0}), Errc::GridTooCoarse);
  CHECK_ERRC(lowest_eigenpairs(build_sector(3, W, 0, {0.05, 10.0}), 0), Errc::InvalidArgument);
}

TEST_CASE("linearized spectrum of a 3D ground state") {
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 1.0, 3.0));
  const RadialProfile prof = solve_ground_state(par);
  const SpectrumReport rep = linearized_report(par, prof, 4, 2);
  CHECK(rep.L1.sectors.size() == 5);
  CHECK(rep.L1.sectors[0].negatives == 1);
  CHECK(rep.L2.sectors[0].near_zero == 1);
  CHECK(rep.l2_kernel_positive);
  CHECK(rep.l2_kernel_correlation > 0.9999);
  const Verdict v = nondegeneracy_check(rep);
  CHECK(v.kind == VerdictKind::Pass);
  CHECK(v.reasons.empty());
  const SpectrumReport short_rep = linearized_report(par, prof, 2, 2);
  CHECK_ERRC(nondegeneracy_check(short_rep), Errc::InvalidArgument);
}

TEST_CASE("one dimension has two sectors") {
  const Params par = with_omega0(make_params(1, 0.5, 0.5, 2.0, 3.0));
  const RadialProfile prof = solve_ground_state(par);
  const SpectrumReport rep = linearized_report(par, prof, 5, 2);
  CHECK(rep.j_max == 1);
  CHECK(rep.L1.sectors.size() == 2);
  CHECK(nondegeneracy_check(rep).kind == VerdictKind::Pass);
}

TEST_CASE("sector minima grow with the angular index") {
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 1.0, 3.0));
  const RadialProfile prof = solve_ground_state(par);
  const SpectrumReport rep = linearized_report(par, prof, 4, 2);
  for (const OperatorReport* op : {&rep.L1, &rep.L2})
    for (std::size_t j = 1; j < op->sectors.size(); ++j)
      CHECK(op->sectors[j].eigenvalues[0].value > op->sectors[j - 1].eigenvalues[0].value);
  // L1 >= -Delta - gamma r^{-alpha} + omega - p phi(0)^{p-1}
  const double floor = par.omega - *par.omega0 - par.p * std::pow(prof.phi0(), par.p - 1);
  CHECK(rep.L1.sectors[0].eigenvalues[0].value > floor);
}

TEST_CASE("halving the base spacing stays within the extrapolation uncertainty") {
  const Params par = with_omega0(make_params(3, 1.0, 1.0, 1.0, 3.0));
  const RadialProfile prof = solve_ground_state(par);
  GridSpec g = linearized_grid(par, prof);
  const SpectrumReport a = linearized_report(par, prof, 2, 2, g);
  g.h /= 2;
  const SpectrumReport b = linearized_report(par, prof, 2, 2, g);
  for (std::size_t j = 0; j < a.L1.sectors.size(); ++j) {
    const auto& ea = a.L1.sectors[j].eigenvalues[0];
    const auto& eb = b.L1.sectors[j].eigenvalues[0];
    CHECK(std::abs(ea.value - eb.value) <= 4 * std::max(ea.uncertainty, 1e-9));
  }
}
