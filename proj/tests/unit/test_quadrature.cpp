#include <cmath>
#include <vector>

#include "gslab/quadrature.hpp"
#include "gslab/tridiagonal.hpp"
#include "support.hpp"

using namespace gslab;
using doctest::Approx;

TEST_CASE("Simpson is exact for cubics on uneven grids") {
  const std::vector<double> grid{0.0, 0.1, 0.35, 0.4, 1.0, 1.7};
  const auto F = [](double x) { return 2 * x * x * x - x + 3; };
  const double exact = 0.5 * std::pow(1.7, 4) - 0.5 * 1.7 * 1.7 + 3 * 1.7;
  CHECK(quad::simpson(grid, F) == Approx(exact).epsilon(1e-14));
  const auto cum = quad::simpson_cumulative(grid, F);
  REQUIRE(cum.size() == grid.size());
  CHECK(cum.front() == 0.0);
  CHECK(cum.back() == Approx(exact).epsilon(1e-14));
  CHECK(cum[3] == Approx(0.5 * std::pow(0.4, 4) - 0.08 + 1.2).epsilon(1e-14));
}

TEST_CASE("analytic tail and head integrals") {
  // int_R^inf e^{-a r} = e^{-a R}/a, int_R^inf r e^{-a r} = e^{-a R}(R/a + 1/a^2)
  CHECK(quad::power_exp_tail(0.0, 2.0, 3.0) == Approx(std::exp(-6.0) / 2.0).epsilon(1e-13));
  CHECK(quad::power_exp_tail(1.0, 2.0, 3.0) == Approx(std::exp(-6.0) * (1.5 + 0.25)).epsilon(1e-13));
  CHECK(quad::power_exp_tail(2.0, 1.0, 0.0) == Approx(2.0).epsilon(1e-13));
  CHECK(quad::power_exp_tail(-0.5, 1.0, 0.0) == Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(quad::power_law_head([](double r) { return 3.0 * std::sqrt(r); }, 1e-4) ==
        Approx(2.0 * std::pow(1e-4, 1.5)).epsilon(1e-12));
  CHECK(quad::power_law_head([](double r) { return std::pow(r, -0.5); }, 0.01) == Approx(0.2).epsilon(1e-12));
}

TEST_CASE("geometric panels resolve endpoint singularities") {
  CHECK(quad::geometric_panels([](double r) { return std::pow(r, -0.5); }, 1e-12, 1.0) ==
        Approx(2.0 * (1.0 - 1e-6)).epsilon(1e-12));
  CHECK(quad::geometric_panels([](double r) { return std::log(r); }, 1e-10, 1.0) == Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("tridiagonal eigenvalues of the discrete Laplacian") {
  const std::size_t n = 50;
  tridiag::SymTridiag t{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
  for (std::size_t k = 0; k < 5; ++k) {
    const double exact = 2.0 - 2.0 * std::cos((k + 1) * M_PI / (n + 1));
    CHECK(tridiag::eigenvalue(t, k) == Approx(exact).epsilon(1e-13));
  }
  CHECK(tridiag::count_below(t, 2.0 - 2.0 * std::cos(3.5 * M_PI / (n + 1))) == 3);
  CHECK(t.lower_bound() <= 0.0);
  CHECK(t.upper_bound() >= 4.0);
  const auto pairs = tridiag::lowest(t, 3);
  REQUIRE(pairs.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    double dot = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double exact = std::sin((i + 1) * (k + 1) * M_PI / (n + 1));
      dot += exact * pairs[k].vector[i];
      norm += exact * exact;
    }
    CHECK(std::abs(dot) / std::sqrt(norm) == Approx(1.0).epsilon(1e-10));
    CHECK(pairs[k].residual < 1e-12);
  }
  CHECK_ERRC(tridiag::lowest(t, n + 1), Errc::ConvergenceFailure);
}
