#pragma once

// Parameters of the radial problem
//
//   phi'' + (N-1)/r phi' - (omega - gamma r^-alpha) phi + phi^p = 0,
//
// the (f, g, h) triple form of the general radial equation, and the
// omega-rescaling that maps any admissible frequency to omega = 1.

#include <functional>
#include <optional>
#include <string>

namespace gslab {

struct Params {
  int dim = 3;
  double gamma = 1.0;
  double alpha = 1.0;
  double omega = 1.0;
  double p = 3.0;
  // Lower frequency bound, filled in by the spectrum module.
  std::optional<double> omega0;

  // Builds parameters without validation. Used by oracle paths such as the
  // potential-free limit gamma = 0, which make_params rejects.
  static Params unchecked(int dim, double gamma, double alpha, double omega, double p);

  bool potential_free() const noexcept { return gamma == 0.0; }
  // Natural length of the far field, 1/sqrt(omega).
  double decay_length() const;
};

// Validates N >= 1, gamma > 0, 0 < alpha < min(N, 2) and 1 < p < 2N/(N-2) - 1
// (no upper bound for N = 1, 2). The omega > omega0 constraint is deferred.
Params make_params(int dim, double gamma, double alpha, double omega, double p);

// Fails fast unless omega exceeds the stored omega0. Potential-free
// parameters only need omega > 0; otherwise omega0 must have been computed.
void require_above_threshold(const Params& params);

// Upper bound on p, +inf for N = 1, 2.
double exponent_upper_bound(int dim);

// Surface measure of the unit sphere S^{N-1}; 2 for N = 1.
double sphere_area(int dim);

// Value and first three derivatives of a scalar function of r.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

using JetFunction = std::function<Jet(double)>;

enum class TripleKind { Special, Custom };

// Coefficients of phi'' + f'/f phi' - g phi + h phi^p = 0.
struct FghTriple {
  JetFunction f;
  JetFunction g;
  JetFunction h;
  TripleKind kind = TripleKind::Custom;
  // Highest derivative order the f and h evaluators provide.
  int derivative_order = 3;
  std::string label;
};

// f = r^{N-1}, g = omega - gamma r^{-alpha}, h = 1 with analytic derivatives.
// gamma = 0 is accepted here for the classical limit.
FghTriple special_fgh(const Params& params);

// Checks f > 0 and h > 0 on a logarithmic sample of (0, inf).
bool triple_positive(const FghTriple& triple);

// phi(x) = amplitude * phi_unit(spatial * x) maps solutions of the omega = 1
// problem with gamma_unit = omega^{(alpha-2)/2} gamma back to the original.
struct UnitOmegaMap {
  Params unit;
  double amplitude = 1.0;
  double spatial = 1.0;
};

UnitOmegaMap rescale_to_unit_omega(const Params& params);

}  // namespace gslab
