#pragma once

// Outward shooting for the positive decaying solution of
//   phi'' + (N-1)/r phi' - (omega - gamma r^-alpha) phi + phi^p = 0.
//
// Shots start from a power series at a small radius r0 and are integrated
// with an embedded Dormand-Prince 5(4) pair. A shot whose phi reaches zero is
// a Crossing (phi(0) too large), one whose phi' turns non-negative while
// phi > 0 is a Rebound (phi(0) too small). Bisection on phi(0) between a
// Rebound and a Crossing converges to the ground state.
//
// For N = 1 the series has no odd part, so phi'(r) -> 0 as r -> 0 holds by
// construction (phi' ~ r^{1-alpha} with alpha < 1).

#include <optional>
#include <span>
#include <vector>

#include "gslab/core.hpp"
#include "gslab/profile.hpp"

namespace gslab {

struct ShootSettings {
  // Start radius; 0 selects 1e-6 / sqrt(omega), reduced by powers of 100
  // until the series truncation estimate is acceptable.
  double r0 = 0.0;
  // End of the profile region; 0 selects 30 / sqrt(omega).
  double r_max = 0.0;
  // Relative integration tolerance.
  double rtol = 1e-12;
  // A shot is Decaying once phi and |phi'| are both below this fraction of
  // phi(0) before any event.
  double decay_threshold = 1e-6;
  // Geometric ratio near the origin and uniform spacing (in units of
  // min(1, 1/sqrt(omega))) of the profile grid.
  double grid_ratio = 1.04;
  double grid_step = 0.04;
  // Relative spread between the final bracket shots tolerated in the
  // returned profile; beyond it the exponential tail takes over.
  double match_spread = 1e-8;
  int max_bisections = 200;
};

// Resolved start radius for initial values up to phi0_max.
double start_radius(const Params& params, double phi0_max, const ShootSettings& settings);
double default_r_max(const Params& params, const ShootSettings& settings);
std::vector<double> shooting_grid(const Params& params, double r0, const ShootSettings& settings);

struct SeriesTerm {
  int gamma_order = 0;  // power of r^{2-alpha}
  int omega_order = 0;  // power of r^2
  double exponent = 0.0;
  double coeff = 0.0;
};

// Truncated expansion phi(r) = sum c_{kl} r^{k(2-alpha) + 2l} about the origin.
// The two leading corrections are
//   (omega phi0 - phi0^p) r^2 / (2N)  and  -gamma phi0 r^{2-alpha} / ((2-alpha)(N-alpha)).
struct SeriesStart {
  double r0 = 0.0;
  double phi0 = 0.0;
  double value = 0.0;  // phi(r0)
  double deriv = 0.0;  // phi'(r0)
  // Magnitude of the highest computed order at r0, relative to phi0.
  double truncation = 0.0;
  std::vector<SeriesTerm> terms;

  double eval(double r) const;
  double eval_deriv(double r) const;
};

// Throws StartRadiusTooLarge when the truncation estimate exceeds max_error.
SeriesStart series_start(const Params& params, double phi0, double r0, double max_error = 1e-13);

enum class ShotKind { Crossing, Rebound, Decaying, Unresolved };

const char* to_string(ShotKind kind) noexcept;

struct ShootOutcome {
  ShotKind kind = ShotKind::Unresolved;
  double event_radius = 0.0;
  ProfileSample event_state;
  // Samples on the shooting grid up to the event, no tail.
  RadialProfile profile;
};

// Integrates from the series start to r_max (or the first event) with
// relative tolerance `tol`. Decaying means phi and |phi'| fell below
// settings.decay_threshold * phi0 before any event; Unresolved means r_max
// was reached without either.
ShootOutcome integrate_outward(const Params& params, const SeriesStart& start, double r_max, double tol,
                               const ShootSettings& settings = {});

// Event classification only: no decay exit, integration until the first
// event or 1000 / sqrt(omega).
ShotKind classify_shot(const Params& params, double phi0, const ShootSettings& settings = {});

// Pointwise residual of the radial equation along a re-shot of the profile's
// phi(0) recorded on a fine grid: phi'' from seven-point divided differences
// of the recorded phi', divided by |phi''| + |(N-1)/r phi'| + |g phi| + phi^p.
// Nodes with r <= 2 r0 or beyond the profile's sampled range are skipped.
struct OdeResidual {
  double max_residual = 0.0;
  double r_at_max = 0.0;
  std::size_t points = 0;
};

OdeResidual ode_residual(const Params& params, const RadialProfile& profile, double grid_ratio = 1.01,
                         double grid_step = 0.01);

struct Bracket {
  double lo = 0.0;  // Rebound
  double hi = 0.0;  // Crossing
};

// Bisects phi(0) inside the bracket. Bisection always continues to the
// resolution of double precision so that the returned profile is accurate
// far from the origin; `tol` is the largest acceptable final width.
RadialProfile find_ground_state(const Params& params, Bracket bracket, double tol,
                                const ShootSettings& settings = {});

// Doubling/halving scan of phi(0) from omega^{1/(p-1)}.
Bracket auto_bracket(const Params& params, const ShootSettings& settings = {});

// Bracket around a hint (e.g. a neighbouring frequency's phi(0)) when it
// classifies correctly, auto_bracket otherwise; then find_ground_state.
RadialProfile solve_ground_state(const Params& params, const ShootSettings& settings = {},
                                 std::optional<double> phi0_hint = std::nullopt);

// Classification of each (increasing) initial value with the number of
// adjacent Rebound -> Crossing and Crossing -> Rebound transitions.
struct ScanResult {
  std::vector<double> phi0;
  std::vector<ShotKind> kinds;
  int transitions = 0;
  int reverse_transitions = 0;
};

ScanResult scan_initial_values(const Params& params, std::span<const double> phi0_values,
                               const ShootSettings& settings = {});

}  // namespace gslab
