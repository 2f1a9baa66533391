#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gslab/core.hpp"

namespace gslab {

// Geometric spacing (ratio) from r_first until the spacing reaches `step`,
// uniform spacing afterwards. The last point is r_last.
std::vector<double> profile_grid(double r_first, double r_last, double ratio, double step);

// phi'' and phi''' implied by the radial equation at (r, phi, phi').
double ode_second(const Params& params, double r, double phi, double dphi);
double ode_third(const Params& params, double r, double phi, double dphi);

// phi(r) ~ amplitude * exp(-rate * r) beyond the sampled region.
struct ExpTail {
  double amplitude = 0.0;
  double rate = 0.0;
};

struct ProfileSample {
  double value = 0.0;
  double deriv = 0.0;
};

// A radial function sampled on a positive increasing grid, with an optional
// exponential far field. Between samples it is interpolated with quintic
// Hermite polynomials built from phi, phi', phi'' (and phi', phi'', phi'''
// for the derivative), the higher derivatives coming from the equation.
class RadialProfile {
 public:
  RadialProfile(Params params, std::vector<double> grid, std::vector<double> values,
                std::vector<double> derivs, double phi0, std::optional<ExpTail> tail);

  const Params& params() const noexcept { return params_; }
  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> derivs() const noexcept { return derivs_; }
  std::span<const double> seconds() const noexcept { return seconds_; }
  double phi0() const noexcept { return phi0_; }
  const std::optional<ExpTail>& tail() const noexcept { return tail_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double r_first() const { return grid_.front(); }
  double r_last() const { return grid_.back(); }

  // Interpolated value and derivative. Throws OutOfRange below r_first, and
  // beyond r_last when there is no tail.
  ProfileSample eval(double r) const;
  double value(double r) const { return eval(r).value; }

  // Copy with every sample (and the tail) multiplied by `factor`.
  RadialProfile scaled(double factor) const;

  // Throws InvariantViolation unless phi0 > 0, all samples are positive and
  // strictly decreasing, the tail rate is positive, and the tail matches the
  // last sample to `continuity_tol` (relative).
  void check_ground_state(double continuity_tol = 1e-9) const;

 private:
  Params params_;
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> derivs_;
  std::vector<double> seconds_;
  std::vector<double> thirds_;
  double phi0_ = 0.0;
  std::optional<ExpTail> tail_;
};

// Closed-form potential-free soliton on the half line (N = 1, gamma = 0):
// [(p+1) omega/2]^{1/(p-1)} sech^{2/(p-1)}((p-1) sqrt(omega) r / 2).
RadialProfile soliton_1d(double omega, double p, double r_last = 0.0);

// Derivatives of the closed form, independent of the equation.
ProfileSample soliton_1d_sample(double omega, double p, double r);

}  // namespace gslab
