#pragma once

// Action, Nehari and virial functionals of a ground state, the slope of the
// mass curve in omega, and the resulting stability classification.
//
// With phi^lambda(x) = lambda^{N/2} phi(lambda x) the action along the
// mass-preserving scaling is
//   S(lambda) = (lambda^2 |grad phi|^2 - gamma lambda^alpha P + omega M) / 2
//               - lambda^m L / (p+1),   m = N (p-1) / 2,
// so virial1 = S'(1) and virial2 = S''(1) are exact combinations of the
// stored integrals.

#include <optional>
#include <string>
#include <vector>

#include "gslab/core.hpp"
#include "gslab/profile.hpp"
#include "gslab/shooting.hpp"

namespace gslab {

struct StabilityRecord {
  double omega = 0.0;
  double phi0 = 0.0;
  double mass = 0.0;     // |phi|_2^2
  double grad_sq = 0.0;  // |grad phi|_2^2
  double pot_int = 0.0;  // int |x|^-alpha phi^2
  double lp1 = 0.0;      // |phi|_{p+1}^{p+1}
  double action = 0.0;
  double nehari = 0.0;
  double virial1 = 0.0;
  double virial2 = 0.0;
  // Magnitudes relative to the sum of the absolute constituent terms.
  double nehari_rel = 0.0;
  double virial1_rel = 0.0;
  double virial2_rel = 0.0;
  // Error band of virial2 inferred from how far nehari and virial1 miss zero.
  double virial2_uncertainty = 0.0;
  std::optional<double> slope;
  std::optional<double> slope_uncertainty;
};

// All integrals over R^N (radial quadrature times |S^{N-1}|), with analytic
// contributions from the origin to the first sample and from the exponential
// tail.
StabilityRecord functionals(const Params& params, const RadialProfile& profile);

struct SlopeEstimate {
  double value = 0.0;  // five-point central difference
  double uncertainty = 0.0;
  double three_point = 0.0;
  std::vector<double> omegas;  // omega - 2h .. omega + 2h
  std::vector<double> masses;
};

// d/d omega of the mass at `params.omega` from solves at omega +- h and
// omega +- 2h (h = 0 selects 0.02 omega). The uncertainty is the gap between
// the five- and three-point differences plus a rounding floor.
SlopeEstimate mass_slope(const Params& params, double h = 0.0, const ShootSettings& settings = {},
                         std::optional<double> phi0_hint = std::nullopt);

enum class StabilityClass { Stable, Unstable, Indeterminate };
const char* to_string(StabilityClass c) noexcept;

// Stable if slope - u > 0, Unstable if slope + u < 0, otherwise
// Indeterminate. Throws InvalidArgument when the slope is missing.
StabilityClass classify(const StabilityRecord& record);

enum class AuditKind { Counterexample, Marginal };
const char* to_string(AuditKind kind) noexcept;

// A point where nonpositive virial2 and nonnegative slope are compatible.
// Counterexample: virial2 < -u and slope > u (both outside their bands).
// Marginal: the bands overlap the forbidden combination.
struct AuditEntry {
  std::size_t index = 0;
  double omega = 0.0;
  double p = 0.0;
  AuditKind kind = AuditKind::Marginal;
  double virial2 = 0.0;
  double slope = 0.0;
};

struct SweepFailure {
  std::size_t index = 0;
  double omega = 0.0;
  double p = 0.0;
  std::string message;
};

struct SweepResult {
  std::vector<Params> points;
  std::vector<std::optional<StabilityRecord>> records;  // aligned with points
  std::vector<SweepFailure> failures;
  std::vector<AuditEntry> audit;

  std::size_t counterexamples() const;
};

std::vector<AuditEntry> audit_records(const std::vector<Params>& points,
                                      const std::vector<std::optional<StabilityRecord>>& records);

// Solves, functionals and slope at every point. Points with gamma > 0 need
// omega0 filled in. Work is spread over up to `threads` workers (0 selects
// the hardware concurrency); results do not depend on the thread count.
SweepResult sweep(const std::vector<Params>& points, const ShootSettings& settings = {}, unsigned threads = 0,
                  double h_rel = 0.02);

// Template parameters with omega replaced by each grid value.
SweepResult sweep(const Params& base, const std::vector<double>& omegas, const ShootSettings& settings = {},
                  unsigned threads = 0, double h_rel = 0.02);

}  // namespace gslab
