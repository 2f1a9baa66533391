#include "gslab/core.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gslab/error.hpp"

namespace gslab {

Params Params::unchecked(int dim, double gamma, double alpha, double omega, double p) {
  Params out;
  out.dim = dim;
  out.gamma = gamma;
  out.alpha = alpha;
  out.omega = omega;
  out.p = p;
  return out;
}

double Params::decay_length() const { return 1.0 / std::sqrt(omega); }

double exponent_upper_bound(int dim) {
  if (dim <= 2) return std::numeric_limits<double>::infinity();
  return 2.0 * dim / (dim - 2.0) - 1.0;
}

double sphere_area(int dim) {
  const double half = 0.5 * dim;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

Params make_params(int dim, double gamma, double alpha, double omega, double p) {
  if (!std::isfinite(gamma) || !std::isfinite(alpha) || !std::isfinite(omega) || !std::isfinite(p))
    throw Error(Errc::NonFiniteInput, "all parameters must be finite");
  if (dim < 1) throw Error(Errc::DimensionInvalid, "dimension N must be >= 1");
  if (!(gamma > 0.0)) throw Error(Errc::NonpositiveGamma, "gamma must be > 0");
  const double alpha_max = std::min<double>(dim, 2.0);
  if (!(alpha > 0.0 && alpha < alpha_max)) {
    std::ostringstream msg;
    msg << "alpha must satisfy 0 < alpha < min(N, 2) = " << alpha_max << ", got " << alpha;
    throw Error(Errc::AlphaOutOfRange, msg.str());
  }
  const double p_max = exponent_upper_bound(dim);
  if (!(p > 1.0 && p < p_max)) {
    std::ostringstream msg;
    msg << "p must satisfy 1 < p < " << p_max << " for N = " << dim << ", got " << p;
    throw Error(Errc::ExponentOutOfRange, msg.str());
  }
  return Params::unchecked(dim, gamma, alpha, omega, p);
}

void require_above_threshold(const Params& params) {
  if (params.potential_free()) {
    if (!(params.omega > 0.0))
      throw Error(Errc::OmegaBelowThreshold, "omega must be > 0 without potential");
    return;
  }
  if (!params.omega0)
    throw Error(Errc::Omega0Unknown, "omega0 has not been computed for these parameters");
  if (!(params.omega > *params.omega0)) {
    std::ostringstream msg;
    msg << "omega = " << params.omega << " must exceed omega0 = " << *params.omega0;
    throw Error(Errc::OmegaBelowThreshold, msg.str());
  }
}

FghTriple special_fgh(const Params& params) {
  const double n1 = params.dim - 1.0;
  const double gamma = params.gamma;
  const double alpha = params.alpha;
  const double omega = params.omega;

  FghTriple out;
  out.kind = TripleKind::Special;
  out.label = "special";
  out.f = [n1](double r) {
    Jet j;
    j.v = std::pow(r, n1);
    j.d1 = n1 * std::pow(r, n1 - 1.0);
    j.d2 = n1 * (n1 - 1.0) * std::pow(r, n1 - 2.0);
    j.d3 = n1 * (n1 - 1.0) * (n1 - 2.0) * std::pow(r, n1 - 3.0);
    return j;
  };
  out.g = [gamma, alpha, omega](double r) {
    const double s = gamma * std::pow(r, -alpha);
    Jet j;
    j.v = omega - s;
    j.d1 = alpha * s / r;
    j.d2 = -alpha * (alpha + 1.0) * s / (r * r);
    j.d3 = alpha * (alpha + 1.0) * (alpha + 2.0) * s / (r * r * r);
    return j;
  };
  out.h = [](double) { return Jet{1.0, 0.0, 0.0, 0.0}; };
  return out;
}

bool triple_positive(const FghTriple& triple) {
  for (int k = -40; k <= 40; ++k) {
    const double r = std::pow(2.0, 0.5 * k);
    if (!(triple.f(r).v > 0.0) || !(triple.h(r).v > 0.0)) return false;
  }
  return true;
}

UnitOmegaMap rescale_to_unit_omega(const Params& params) {
  if (!(params.omega > 0.0)) throw Error(Errc::InvalidArgument, "rescaling needs omega > 0");
  UnitOmegaMap out;
  out.unit = params;
  out.unit.omega = 1.0;
  out.unit.gamma = std::pow(params.omega, 0.5 * (params.alpha - 2.0)) * params.gamma;
  if (params.omega0) out.unit.omega0 = *params.omega0 / params.omega;
  out.amplitude = std::pow(params.omega, 1.0 / (params.p - 1.0));
  out.spatial = std::sqrt(params.omega);
  return out;
}

}  // namespace gslab
