#pragma once

// Numerical certification of the hypotheses behind the uniqueness argument
// for phi'' + f'/f phi' - g phi + h phi^p = 0:
//   regularity      f, h in C^3 and positive, g in C^1
//   integrability   f(|g|+h) and f(|g|+h) int_tau^R 1/f integrable at 0,
//                   1/f not integrable at 0
//   origin limits   a U V -> 0 and b V -> 0
//   origin energy   either b U -> 0 with liminf (c - a g) >= 0 ("bu" route)
//                   or limsup D/a <= 0 ("d" route)
//   G sign          G takes negative values, and either G changes sign at
//                   most once from + to - ("single" route) or D <= 0 at
//                   every zero of G ("zeros" route)

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gslab/core.hpp"
#include "gslab/pohozaev.hpp"

namespace gslab {

enum class ConditionVerdict { Holds, Fails, Inconclusive };
const char* to_string(ConditionVerdict v) noexcept;

enum class Condition { Regularity, Integrability, OriginLimits, OriginEnergy, GSign };
inline constexpr std::array<Condition, 5> kAllConditions{Condition::Regularity, Condition::Integrability,
                                                         Condition::OriginLimits, Condition::OriginEnergy,
                                                         Condition::GSign};
const char* to_string(Condition c) noexcept;

// F sampled at r_k = 2^-k with the leading exponent fitted by least squares
// of log|F| against log r over the deeper half of the samples.
struct LimitSequence {
  std::string name;
  std::vector<double> r;
  std::vector<double> values;
  double exponent = 0.0;  // +inf when the sequence vanishes identically
  std::optional<double> expected;
  bool identically_zero = false;
  ConditionVerdict verdict = ConditionVerdict::Inconclusive;
  std::string note;
};

struct LimitOptions {
  int k_min = 4;
  int k_max = 40;
  // Fitted exponents closer than this to the critical value are Inconclusive.
  double margin = 0.1;
  // Tolerance for the fit against a known exact exponent.
  double expected_tol = 0.05;
};

struct LimitReport {
  ConditionVerdict integrability = ConditionVerdict::Inconclusive;
  ConditionVerdict origin_limits = ConditionVerdict::Inconclusive;
  ConditionVerdict origin_energy = ConditionVerdict::Inconclusive;
  ConditionVerdict energy_bu = ConditionVerdict::Inconclusive;  // b U -> 0, liminf (c - a g) >= 0
  ConditionVerdict energy_d = ConditionVerdict::Inconclusive;   // limsup D/a <= 0
  std::vector<LimitSequence> sequences;
  std::vector<std::string> notes;
};

// Integrability by exponent arithmetic for the special triple (closed-form
// coefficients) and by fitted exponents otherwise; the limit conditions by
// sampled sequences, cross-checked against the exact exponents when known.
LimitReport limit_conditions(const PohozaevCoeffs& co, const Params& params, const LimitOptions& opt = {});

enum class GStructureKind { SingleSignChange, NoPositiveZeroWithDPositive, Other };
const char* to_string(GStructureKind k) noexcept;

struct GZero {
  double r = 0.0;
  double D = 0.0;
};

struct GStructure {
  GStructureKind kind = GStructureKind::Other;
  // G >= 0 on (0, kappa) and G <= 0 on (kappa, inf); 0 when G <= 0
  // everywhere, +inf when G >= 0 everywhere.
  std::optional<double> kappa;
  bool single_sign_change = false;
  bool zeros_nonpositive_D = false;  // D(r0) <= 0 at every located zero r0
  bool has_negative_part = false;
  std::vector<GZero> zeros;
  bool polish_failed = false;
  std::string witness;
};

// Closed-form coefficients: exact root analysis of A + B r^{2-alpha} + C r^2,
// which is monotone on each side of its single critical point. Otherwise G
// is sampled on a logarithmic grid around the natural length scale and the
// sign changes are polished by bracketing root finding.
GStructure g_sign_structure(const PohozaevCoeffs& co, const Params& params);

struct ConditionReport {
  std::array<ConditionVerdict, 5> verdicts{ConditionVerdict::Inconclusive, ConditionVerdict::Inconclusive,
                                           ConditionVerdict::Inconclusive, ConditionVerdict::Inconclusive,
                                           ConditionVerdict::Inconclusive};
  std::string energy_route;  // "bu" or "d" when certified
  std::string g_route;       // "single" or "zeros" when certified
  LimitReport limits;
  GStructure g;
  std::vector<std::string> notes;

  ConditionVerdict verdict(Condition c) const { return verdicts[static_cast<std::size_t>(c)]; }
  ConditionVerdict overall() const;
};

// Special triple with closed-form routes. The origin-energy and G-sign
// routes follow the dimension: N = 2 certifies via D, other dimensions via
// the b U / single-sign-change branches; the other branch is used as a
// fallback. For N = 1 the non-integrability of 1/f is replaced by
// f phi' -> 0 at the origin.
ConditionReport check_all(const Params& params, const LimitOptions& opt = {});

// User-supplied triple through the generic coefficient chain.
ConditionReport check_all(const FghTriple& triple, const Params& params, const LimitOptions& opt = {});

}  // namespace gslab
