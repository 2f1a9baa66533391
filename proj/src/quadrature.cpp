#include "gslab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "gslab/error.hpp"

namespace gslab::quad {

double simpson(std::span<const double> grid, const Integrand& F) {
  if (grid.size() < 2) return 0.0;
  double sum = 0.0;
  double left = F(grid[0]);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i], b = grid[i + 1];
    const double right = F(b);
    sum += (b - a) / 6.0 * (left + 4.0 * F(0.5 * (a + b)) + right);
    left = right;
  }
  return sum;
}

std::vector<double> simpson_cumulative(std::span<const double> grid, const Integrand& F) {
  std::vector<double> out(grid.size(), 0.0);
  if (grid.empty()) return out;
  double left = F(grid[0]);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i], b = grid[i + 1];
    const double right = F(b);
    out[i + 1] = out[i] + (b - a) / 6.0 * (left + 4.0 * F(0.5 * (a + b)) + right);
    left = right;
  }
  return out;
}

double power_law_head(const Integrand& F, double eps) {
  const double f1 = F(eps);
  if (f1 == 0.0) return 0.0;
  const double f2 = F(0.5 * eps);
  double s = 0.0;
  if (f2 != 0.0 && (f1 > 0.0) == (f2 > 0.0)) s = std::log2(f1 / f2);
  if (!(s > -1.0)) throw Error(Errc::QuadratureFailure, "integrand is not integrable at the origin");
  return f1 * eps / (s + 1.0);
}

double power_exp_tail(double k, double rate, double R) {
  if (!(k > -1.0) || !(rate > 0.0) || !(R >= 0.0))
    throw Error(Errc::InvalidArgument, "tail integral needs k > -1, rate > 0, R >= 0");
  return boost::math::tgamma(k + 1.0, rate * R) / std::pow(rate, k + 1.0);
}

double geometric_panels(const Integrand& F, double a, double b, double rel_tol) {
  if (!(b > a) || !(a > 0.0)) return 0.0;
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  double sum = 0.0;
  double lo = a;
  while (lo < b) {
    const double hi = std::min(2.0 * lo, b);
    sum += Kronrod::integrate(F, lo, hi, 3, rel_tol);
    lo = hi;
  }
  return sum;
}

}  // namespace gslab::quad
