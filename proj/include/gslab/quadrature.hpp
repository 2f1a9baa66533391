#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gslab::quad {

using Integrand = std::function<double(double)>;

// Composite Simpson over the intervals of `grid`, sampling F at every node and
// interval midpoint.
double simpson(std::span<const double> grid, const Integrand& F);

// Running integrals from grid[0]: out[i] = int_{grid[0]}^{grid[i]} F.
std::vector<double> simpson_cumulative(std::span<const double> grid, const Integrand& F);

// int_0^eps F assuming F ~ c r^s near 0, with s estimated from F(eps) and
// F(eps/2). Requires s > -1.
double power_law_head(const Integrand& F, double eps);

// int_R^inf r^k exp(-rate r) dr for k > -1, rate > 0.
double power_exp_tail(double k, double rate, double R);

// Adaptive Gauss-Kronrod over geometric panels [a 2^i, a 2^{i+1}] ∩ [a, b];
// suited to integrands with power-type behaviour near a small a.
double geometric_panels(const Integrand& F, double a, double b, double rel_tol = 1e-13);

}  // namespace gslab::quad
