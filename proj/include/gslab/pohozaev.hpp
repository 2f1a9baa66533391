#pragma once

// Generalized Pohozaev function J(r; phi) for phi'' + f'/f phi' - g phi + h phi^p = 0
// and the coefficient functions entering it:
//   a = f^{2(p+1)/(p+3)} h^{-2/(p+3)},  b = -a'/2 + (f'/f) a,  c = -b' + (f'/f) b,
//   G = b g + c'/2 - (a g)'/2,  D = b^2 - a (c - a g),
//   U = (1/f) int_0^r f (|g| + h),  V = (1/f) int_0^r f h.
// Along solutions dJ/dr = G phi^2.

#include <optional>
#include <span>
#include <vector>

#include "gslab/core.hpp"
#include "gslab/profile.hpp"

namespace gslab {

enum class CoeffMode { ClosedForm, Generic };

// Special case f = r^{N-1}, g = omega - gamma r^-alpha, h = 1:
//   a = r^q, G = r^{q-3} (A + B r^{2-alpha} + C r^2) / (2 (p+3)^3).
struct ClosedFormConstants {
  double q = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

ClosedFormConstants closed_form_constants(const Params& params);

class PohozaevCoeffs {
 public:
  PohozaevCoeffs(FghTriple triple, Params params, CoeffMode mode);

  CoeffMode mode() const noexcept { return mode_; }
  const std::optional<ClosedFormConstants>& constants() const noexcept { return constants_; }
  const Params& params() const noexcept { return params_; }
  const FghTriple& triple() const noexcept { return triple_; }

  double a(double r) const;
  double b(double r) const;
  double c(double r) const;
  double G(double r) const;
  double D(double r) const;
  double U(double r) const;
  double V(double r) const;
  double f(double r) const { return triple_.f(r).v; }
  double g(double r) const { return triple_.g(r).v; }
  double h(double r) const { return triple_.h(r).v; }

 private:
  struct Chain {
    double a, b, c, G, D;
  };
  Chain generic(double r) const;

  FghTriple triple_;
  Params params_;
  CoeffMode mode_;
  std::optional<ClosedFormConstants> constants_;
};

// ClosedForm for special triples unless `force` says otherwise. Generic mode
// needs f and h derivatives up to third order (DerivativeUnavailable).
PohozaevCoeffs coeffs(const FghTriple& triple, const Params& params, std::optional<CoeffMode> force = std::nullopt);

// J(r; phi) from the interpolated profile; OutOfRange below the first sample.
double J(const PohozaevCoeffs& co, const RadialProfile& profile, double r);

struct IdentityReport {
  double max_residual = 0.0;
  double r_at_max = 0.0;
  std::size_t points = 0;
};

// max over interior grid points of |dJ/dr - G phi^2| / (1 + |G phi^2|), with
// dJ/dr from Richardson-combined central differences at a quarter and an
// eighth of the local spacing.
IdentityReport verify_identity(const PohozaevCoeffs& co, const RadialProfile& profile,
                               std::span<const double> grid);
IdentityReport verify_identity(const PohozaevCoeffs& co, const RadialProfile& profile);

struct EtaReport {
  std::vector<double> r;
  std::vector<double> eta;
  std::vector<double> eta_prime;           // (psi/phi)' from the profiles
  std::vector<double> eta_prime_integral;  // from the integral representation
  std::vector<double> X;
  // max |X' - 2 eta eta' J(phi)| / (1 + |2 eta eta' J(phi)| + n) over interior
  // points, n being the rounding level of the differenced X.
  double x_residual = 0.0;
  double x_residual_at = 0.0;
};

// phi = lower (smaller value at 0), psi = upper. Grid points outside either
// profile's sampled range, or where either profile is not positive, are
// skipped.
EtaReport eta_and_X(const PohozaevCoeffs& co, const RadialProfile& lower, const RadialProfile& upper,
                    std::span<const double> grid);

// max |direct - integral| / max |direct| for r in [r_lo, r_hi].
double eta_prime_agreement(const EtaReport& report, double r_lo, double r_hi);

}  // namespace gslab
