#include "gslab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gslab/error.hpp"

namespace gslab {

std::vector<double> profile_grid(double r_first, double r_last, double ratio, double step) {
  if (!(r_first > 0.0) || !(r_last > r_first) || !(ratio > 1.0) || !(step > 0.0))
    throw Error(Errc::InvalidArgument, "profile grid needs 0 < r_first < r_last, ratio > 1, step > 0");
  std::vector<double> grid{r_first};
  double r = r_first;
  while (r * (ratio - 1.0) < step) {
    r *= ratio;
    if (r >= r_last) break;
    grid.push_back(r);
  }
  // Uniform part anchored on the last geometric point.
  const double start = grid.back();
  for (long k = 1;; ++k) {
    const double next = start + k * step;
    if (next >= r_last - 1e-12 * r_last) break;
    grid.push_back(next);
  }
  grid.push_back(r_last);
  return grid;
}

namespace {

double signed_power(double x, double p) { return std::copysign(std::pow(std::abs(x), p), x); }

}  // namespace

double ode_second(const Params& params, double r, double phi, double dphi) {
  const double g = params.omega - params.gamma * std::pow(r, -params.alpha);
  return -(params.dim - 1.0) / r * dphi + g * phi - signed_power(phi, params.p);
}

double ode_third(const Params& params, double r, double phi, double dphi) {
  const double n1 = params.dim - 1.0;
  const double s = params.gamma * std::pow(r, -params.alpha);
  const double g = params.omega - s;
  const double dg = params.alpha * s / r;
  const double d2 = ode_second(params, r, phi, dphi);
  return n1 * dphi / (r * r) - n1 * d2 / r + dg * phi + g * dphi -
         params.p * std::pow(std::abs(phi), params.p - 1.0) * dphi;
}

RadialProfile::RadialProfile(Params params, std::vector<double> grid, std::vector<double> values,
                             std::vector<double> derivs, double phi0, std::optional<ExpTail> tail)
    : params_(std::move(params)),
      grid_(std::move(grid)),
      values_(std::move(values)),
      derivs_(std::move(derivs)),
      phi0_(phi0),
      tail_(tail) {
  if (grid_.empty() || grid_.size() != values_.size() || grid_.size() != derivs_.size())
    throw Error(Errc::InvariantViolation, "profile arrays must be non-empty and of equal length");
  if (!(grid_.front() > 0.0)) throw Error(Errc::InvariantViolation, "profile grid must be positive");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1]))
      throw Error(Errc::InvariantViolation, "profile grid must be strictly increasing");
  seconds_.resize(grid_.size());
  thirds_.resize(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    seconds_[i] = ode_second(params_, grid_[i], values_[i], derivs_[i]);
    thirds_[i] = ode_third(params_, grid_[i], values_[i], derivs_[i]);
  }
}

namespace {

// Quintic Hermite interpolation on [0, 1] scaled by h.
double quintic(double t, double h, double y0, double d0, double s0, double y1, double d1, double s1) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
  const double h10 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
  const double h20 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
  const double h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
  const double h11 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
  const double h21 = 0.5 * (t3 - 2.0 * t4 + t5);
  return h00 * y0 + h * h10 * d0 + h * h * h20 * s0 + h01 * y1 + h * h11 * d1 + h * h * h21 * s1;
}

}  // namespace

ProfileSample RadialProfile::eval(double r) const {
  if (r < grid_.front()) {
    std::ostringstream msg;
    msg << "r = " << r << " lies below the first sample " << grid_.front();
    throw Error(Errc::OutOfRange, msg.str());
  }
  if (r >= grid_.back()) {
    if (r == grid_.back()) return {values_.back(), derivs_.back()};
    if (!tail_) throw Error(Errc::OutOfRange, "r beyond the sampled region of a profile without tail");
    const double v = tail_->amplitude * std::exp(-tail_->rate * r);
    return {v, -tail_->rate * v};
  }
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double h = grid_[i + 1] - grid_[i];
  const double t = (r - grid_[i]) / h;
  const double v = quintic(t, h, values_[i], derivs_[i], seconds_[i], values_[i + 1], derivs_[i + 1],
                           seconds_[i + 1]);
  const double d = quintic(t, h, derivs_[i], seconds_[i], thirds_[i], derivs_[i + 1], seconds_[i + 1],
                           thirds_[i + 1]);
  return {v, d};
}

RadialProfile RadialProfile::scaled(double factor) const {
  RadialProfile out = *this;
  out.phi0_ *= factor;
  for (auto* arr : {&out.values_, &out.derivs_, &out.seconds_, &out.thirds_})
    for (double& x : *arr) x *= factor;
  if (out.tail_) out.tail_->amplitude *= factor;
  return out;
}

void RadialProfile::check_ground_state(double continuity_tol) const {
  if (!(phi0_ > 0.0)) throw Error(Errc::InvariantViolation, "phi0 must be positive");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!(values_[i] > 0.0)) {
      std::ostringstream msg;
      msg << "profile not positive at r = " << grid_[i];
      throw Error(Errc::InvariantViolation, msg.str());
    }
    if (!(derivs_[i] < 0.0)) {
      std::ostringstream msg;
      msg << "profile not strictly decreasing at r = " << grid_[i];
      throw Error(Errc::InvariantViolation, msg.str());
    }
  }
  if (!tail_ || !(tail_->rate > 0.0)) throw Error(Errc::InvariantViolation, "tail rate must be positive");
  const double from_tail = tail_->amplitude * std::exp(-tail_->rate * grid_.back());
  if (std::abs(from_tail - values_.back()) > continuity_tol * values_.back())
    throw Error(Errc::InvariantViolation, "tail model does not match the last sample");
}

ProfileSample soliton_1d_sample(double omega, double p, double r) {
  const double amp = std::pow(0.5 * (p + 1.0) * omega, 1.0 / (p - 1.0));
  const double k = 0.5 * (p - 1.0) * std::sqrt(omega);
  const double v = amp * std::pow(1.0 / std::cosh(k * r), 2.0 / (p - 1.0));
  return {v, -std::sqrt(omega) * std::tanh(k * r) * v};
}

RadialProfile soliton_1d(double omega, double p, double r_last) {
  if (!(omega > 0.0) || !(p > 1.0)) throw Error(Errc::InvalidArgument, "soliton needs omega > 0, p > 1");
  const double length = 1.0 / std::sqrt(omega);
  if (r_last <= 0.0) r_last = 20.0 * length;
  const auto grid = profile_grid(1e-6 * length, r_last, 1.04, 0.04 * std::min(1.0, length));
  std::vector<double> values(grid.size()), derivs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto s = soliton_1d_sample(omega, p, grid[i]);
    values[i] = s.value;
    derivs[i] = s.deriv;
  }
  const double amp = std::pow(0.5 * (p + 1.0) * omega, 1.0 / (p - 1.0));
  ExpTail tail{amp * std::pow(2.0, 2.0 / (p - 1.0)), std::sqrt(omega)};
  // Match the tail to the last sample exactly; the sech correction there is
  // of relative size exp(-2 sqrt(omega) r_last).
  tail.amplitude = values.back() * std::exp(tail.rate * grid.back());
  return RadialProfile(Params::unchecked(1, 0.0, 0.0, omega, p), grid, std::move(values),
                       std::move(derivs), amp, tail);
}

}  // namespace gslab
