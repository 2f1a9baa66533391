#include "gslab/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "gslab/error.hpp"
#include "gslab/quadrature.hpp"

namespace gslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using V = ConditionVerdict;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

LimitSequence sample(std::string name, const std::function<double(double)>& F, const LimitOptions& opt,
                     std::optional<double> expected) {
  LimitSequence s;
  s.name = std::move(name);
  s.expected = expected;
  for (int k = opt.k_min; k <= opt.k_max; ++k) {
    const double r = std::ldexp(1.0, -k);
    s.r.push_back(r);
    s.values.push_back(F(r));
  }
  s.identically_zero = std::all_of(s.values.begin(), s.values.end(), [](double v) { return v == 0.0; });
  if (s.identically_zero) {
    s.exponent = kInf;
    return s;
  }
  // Least-squares slope over the deeper half.
  const std::size_t first = s.r.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = first; i < s.r.size(); ++i) {
    if (s.values[i] == 0.0 || !std::isfinite(s.values[i])) continue;
    const double x = std::log(s.r[i]), y = std::log(std::abs(s.values[i]));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  s.exponent = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : std::numeric_limits<double>::quiet_NaN();
  return s;
}

// Sign of the deeper half: +1 all >= 0, -1 all <= 0, 0 mixed.
int deep_sign(const LimitSequence& s) {
  bool pos = true, neg = true;
  for (std::size_t i = s.values.size() / 2; i < s.values.size(); ++i) {
    if (s.values[i] < 0.0) pos = false;
    if (s.values[i] > 0.0) neg = false;
  }
  return pos ? 1 : (neg ? -1 : 0);
}

// Exponent compared against a critical value: above by more than the margin
// is `above`, below is `below`, otherwise Inconclusive.
V by_exponent(double e, double critical, double margin, V above, V below) {
  if (std::isnan(e)) return V::Inconclusive;
  if (e > critical + margin) return above;
  if (e < critical - margin) return below;
  return V::Inconclusive;
}

// A fitted exponent that contradicts the known exact one demotes the verdict.
void cross_check(LimitSequence& s, const LimitOptions& opt) {
  if (!s.expected || s.identically_zero) return;
  if (!(std::abs(s.exponent - *s.expected) <= opt.expected_tol)) {
    s.note = "fitted exponent " + fmt(s.exponent) + " differs from exact " + fmt(*s.expected);
    s.verdict = V::Inconclusive;
  }
}

V both(V x, V y) {
  if (x == V::Fails || y == V::Fails) return V::Fails;
  if (x == V::Inconclusive || y == V::Inconclusive) return V::Inconclusive;
  return V::Holds;
}

V either(V x, V y) {
  if (x == V::Holds || y == V::Holds) return V::Holds;
  if (x == V::Fails && y == V::Fails) return V::Fails;
  return V::Inconclusive;
}

// Verdict for "F -> 0".
void to_zero(LimitSequence& s, const LimitOptions& opt) {
  s.verdict = s.identically_zero ? V::Holds : by_exponent(s.exponent, 0.0, opt.margin, V::Holds, V::Fails);
  cross_check(s, opt);
}

double root_between(const std::function<double(double)>& F, double lo, double hi, bool& failed) {
  double flo = F(lo), fhi = F(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  boost::uintmax_t iters = 200;
  try {
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto [a, b] = boost::math::tools::toms748_solve(F, lo, hi, flo, fhi, tol, iters);
    if (iters >= 200) failed = true;
    return 0.5 * (a + b);
  } catch (const std::exception&) {
    failed = true;
    return 0.5 * (lo + hi);
  }
}

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Fill kappa, single_sign_change and has_negative_part from the sign
// sequence of G between consecutive zeros.
void classify_signs(GStructure& gs, const std::vector<int>& signs, const std::vector<double>& roots) {
  std::vector<int> s;
  std::vector<double> at;  // radius where sign s[i] starts
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == 0) continue;
    if (s.empty() || s.back() != signs[i]) {
      s.push_back(signs[i]);
      at.push_back(i == 0 ? 0.0 : roots[i - 1]);
    }
  }
  gs.has_negative_part = std::find(s.begin(), s.end(), -1) != s.end();
  if (s.empty()) {
    gs.single_sign_change = true;  // G == 0
    gs.kappa = 0.0;
  } else if (s.size() == 1) {
    gs.single_sign_change = true;
    gs.kappa = s[0] < 0 ? 0.0 : kInf;
  } else if (s.size() == 2 && s[0] > 0) {
    gs.single_sign_change = true;
    gs.kappa = at[1];
  } else {
    std::string w = "sign pattern";
    for (std::size_t i = 0; i < s.size(); ++i) w += std::string(s[i] > 0 ? " +" : " -") + "@" + fmt(at[i]);
    gs.witness = w;
  }
}

void finish(GStructure& gs, const PohozaevCoeffs& co) {
  gs.zeros_nonpositive_D = true;
  for (auto& z : gs.zeros) {
    z.D = co.D(z.r);
    if (z.D > 0.0) {
      gs.zeros_nonpositive_D = false;
      if (gs.witness.empty()) gs.witness = "G(r) = 0 with D = " + fmt(z.D) + " > 0 at r = " + fmt(z.r);
    }
  }
  if (gs.single_sign_change)
    gs.kind = GStructureKind::SingleSignChange;
  else if (gs.zeros_nonpositive_D)
    gs.kind = GStructureKind::NoPositiveZeroWithDPositive;
  else
    gs.kind = GStructureKind::Other;
}

GStructure closed_form_structure(const PohozaevCoeffs& co, const Params& params) {
  const auto& k = *co.constants();
  const double A = k.A, B = k.B, C = k.C, e = 2.0 - params.alpha;
  auto s = [&](double r) { return A + B * std::pow(r, e) + C * r * r; };

  // Asymptotic signs at 0 and infinity.
  const int s0 = A != 0.0 ? sgn(A) : (B != 0.0 ? sgn(B) : sgn(C));
  const int sinf = C != 0.0 ? sgn(C) : (B != 0.0 ? sgn(B) : sgn(A));

  // s is monotone on each side of the unique zero of s' = r^{e-1}(e B + 2 C r^alpha).
  std::vector<double> cuts{0.0};
  if (C != 0.0 && -e * B / (2.0 * C) > 0.0) cuts.push_back(std::pow(-e * B / (2.0 * C), 1.0 / params.alpha));
  cuts.push_back(kInf);

  GStructure gs;
  std::vector<int> signs;
  std::vector<double> roots;
  // Finite radii showing the asymptotic signs.
  const double scale = cuts.size() == 3 ? cuts[1] : 1.0;
  double r_small = scale, r_big = scale;
  if (s0 != 0)
    for (int i = 0; i < 2000 && sgn(s(r_small)) != s0; ++i) r_small *= 0.5;
  if (sinf != 0)
    for (int i = 0; i < 2000 && sgn(s(r_big)) != sinf; ++i) r_big *= 2.0;
  if (cuts.size() == 3) {
    r_small = std::min(r_small, 0.5 * cuts[1]);
    r_big = std::max(r_big, 2.0 * cuts[1]);
  }

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i] == 0.0 ? r_small : cuts[i];
    const double hi = std::isinf(cuts[i + 1]) ? r_big : cuts[i + 1];
    const int slo = cuts[i] == 0.0 ? s0 : sgn(s(lo));
    const int shi = std::isinf(cuts[i + 1]) ? sinf : sgn(s(hi));
    if (signs.empty()) signs.push_back(slo);
    if (slo != 0 && shi != 0 && slo != shi) {
      const double r0 = root_between(s, lo, hi, gs.polish_failed);
      roots.push_back(r0);
      gs.zeros.push_back({r0, 0.0});
      signs.push_back(shi);
    } else if (shi == 0 && !std::isinf(cuts[i + 1])) {
      // Tangential zero at the critical point.
      roots.push_back(hi);
      gs.zeros.push_back({hi, 0.0});
      signs.push_back(0);
    } else if (slo == 0 && shi != 0) {
      signs.back() = shi;
    }
  }
  classify_signs(gs, signs, roots);
  finish(gs, co);
  return gs;
}

GStructure sampled_structure(const PohozaevCoeffs& co, const Params& params) {
  double len = params.omega > 0.0 ? 1.0 / std::sqrt(params.omega) : 1.0;
  if (params.gamma > 0.0) len = std::min(len, std::pow(params.gamma, -1.0 / (2.0 - params.alpha)));
  const double lo = 1e-10 * len, hi = 1e4 * len;
  const int n = 4000;
  auto G = [&](double r) { return co.G(r); };

  GStructure gs;
  std::vector<int> signs;
  std::vector<double> roots;
  double r_prev = lo;
  int s_prev = sgn(G(lo));
  signs.push_back(s_prev);
  for (int i = 1; i <= n; ++i) {
    const double r = lo * std::pow(hi / lo, double(i) / n);
    const double g = G(r);
    if (!std::isfinite(g)) {
      gs.polish_failed = true;
      gs.witness = "non-finite G at r = " + fmt(r);
      break;
    }
    const int sg = sgn(g);
    if (sg != s_prev && sg != 0 && s_prev != 0) {
      const double r0 = root_between(G, r_prev, r, gs.polish_failed);
      roots.push_back(r0);
      gs.zeros.push_back({r0, 0.0});
      signs.push_back(sg);
    } else if (sg == 0) {
      roots.push_back(r);
      gs.zeros.push_back({r, 0.0});
      signs.push_back(0);
    } else if (s_prev == 0) {
      roots.push_back(r_prev);
      signs.push_back(sg);
    }
    r_prev = r;
    s_prev = sg;
  }
  classify_signs(gs, signs, roots);
  finish(gs, co);
  return gs;
}

struct SpecialExponents {
  double f_weight;   // f (|g| + h)
  double inv_f_int;  // int_tau^R 1/f, 0 for bounded or logarithmic
  double aUV, bV, bU, c_ag, D_a;
  bool zero_b;
};

SpecialExponents special_exponents(const Params& params) {
  const double n = params.dim, q = closed_form_constants(params).q;
  const double sing = params.gamma > 0.0 ? params.alpha : 0.0;
  const double beta = n - 1.0 - q / 2.0;
  SpecialExponents e{};
  e.f_weight = n - 1.0 - sing;
  e.inv_f_int = n >= 3 ? 2.0 - n : 0.0;
  // U ~ r^{1 - sing}, V ~ r, b ~ r^{q-1}.
  e.aUV = q + 2.0 - sing;
  e.bV = q;
  e.bU = q - sing;
  e.zero_b = params.dim == 1;
  // c - a g = beta (n - q) r^{q-2} + a (gamma r^-alpha - omega).
  const double c0 = beta * (n - q);
  e.c_ag = c0 != 0.0 ? q - 2.0 : q - sing;
  // D/a = beta (q/2 - 1) r^{q-2} + r^q g.
  const double d0 = beta * (q / 2.0 - 1.0);
  e.D_a = d0 != 0.0 ? q - 2.0 : q - sing;
  return e;
}

}  // namespace

const char* to_string(ConditionVerdict v) noexcept {
  switch (v) {
    case V::Holds: return "Holds";
    case V::Fails: return "Fails";
    case V::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(Condition c) noexcept {
  switch (c) {
    case Condition::Regularity: return "regularity";
    case Condition::Integrability: return "integrability";
    case Condition::OriginLimits: return "origin_limits";
    case Condition::OriginEnergy: return "origin_energy";
    case Condition::GSign: return "g_sign";
  }
  return "?";
}

const char* to_string(GStructureKind k) noexcept {
  switch (k) {
    case GStructureKind::SingleSignChange: return "SingleSignChange";
    case GStructureKind::NoPositiveZeroWithDPositive: return "NoPositiveZeroWithDPositive";
    case GStructureKind::Other: return "Other";
  }
  return "?";
}

LimitReport limit_conditions(const PohozaevCoeffs& co, const Params& params, const LimitOptions& opt) {
  if (opt.k_min < 1 || opt.k_max < opt.k_min + 3)
    throw Error(Errc::InvalidArgument, "limit sampling needs k_min >= 1 and at least four samples");
  const bool special = co.mode() == CoeffMode::ClosedForm;
  std::optional<SpecialExponents> ex;
  if (special) ex = special_exponents(params);
  auto expect = [&](double SpecialExponents::*m) -> std::optional<double> {
    if (ex) return (*ex).*m;
    return std::nullopt;
  };

  LimitReport rep;
  const auto f = [&](double r) { return co.f(r); };
  const auto weight = [&](double r) { return co.f(r) * (std::abs(co.g(r)) + co.h(r)); };

  // Integrability near the origin.
  auto w = sample("f(|g|+h)", weight, opt, expect(&SpecialExponents::f_weight));
  auto inv_f_int = [&](double tau) {
    if (special) {
      const int n = params.dim;
      if (n == 1) return 1.0 - tau;
      if (n == 2) return -std::log(tau);
      return (std::pow(tau, 2.0 - n) - 1.0) / (n - 2.0);
    }
    return quad::geometric_panels([&](double s) { return 1.0 / f(s); }, tau, 1.0, 1e-10);
  };
  auto wi = sample("f(|g|+h) int_tau^1 1/f", [&](double t) { return weight(t) * inv_f_int(t); }, opt,
                   ex && params.dim != 2 ? std::optional<double>(ex->f_weight + ex->inv_f_int) : std::nullopt);
  auto invf = sample("1/f", [&](double r) { return 1.0 / f(r); }, opt,
                     ex ? std::optional<double>(1.0 - params.dim) : std::nullopt);
  if (special) {
    // Exponent arithmetic: r^{N-1-alpha} and the product are integrable for
    // alpha < min(N, 2); 1/f = r^{1-N} is not integrable for N >= 2.
    w.verdict = ex->f_weight > -1.0 ? V::Holds : V::Fails;
    wi.verdict = ex->f_weight + ex->inv_f_int > -1.0 ? V::Holds : V::Fails;
    invf.verdict = params.dim >= 2 ? V::Holds : V::Fails;
    for (auto* s : {&w, &wi, &invf}) cross_check(*s, opt);
    if (params.dim == 2) wi.note = "logarithmic factor; exponent arithmetic gives 1 - alpha";
  } else {
    w.verdict = by_exponent(w.exponent, -1.0, opt.margin, V::Holds, V::Fails);
    wi.verdict = by_exponent(wi.exponent, -1.0, opt.margin, V::Holds, V::Fails);
    invf.verdict = by_exponent(invf.exponent, -1.0, opt.margin, V::Fails, V::Holds);
  }
  V nonint = invf.verdict;
  if (special && params.dim == 1) {
    // On the line 1/f is integrable; the weaker requirement f phi' -> 0
    // holds because phi' ~ r^{1-alpha} (or r without the potential).
    const double e = params.gamma > 0.0 ? 1.0 - params.alpha : 1.0;
    nonint = e > 0.0 ? V::Holds : V::Fails;
    rep.notes.push_back("N = 1: 1/f is integrable; certified f phi' -> 0 instead (phi' ~ r^" + fmt(e) + ")");
  }
  rep.integrability = both(both(w.verdict, wi.verdict), nonint);

  // Origin limits.
  auto aUV = sample("a U V", [&](double r) { return co.a(r) * co.U(r) * co.V(r); }, opt,
                    expect(&SpecialExponents::aUV));
  to_zero(aUV, opt);
  auto bV = sample("b V", [&](double r) { return co.b(r) * co.V(r); }, opt,
                   ex && !ex->zero_b ? std::optional<double>(ex->bV) : std::nullopt);
  to_zero(bV, opt);
  rep.origin_limits = both(aUV.verdict, bV.verdict);

  // Origin energy, both branches.
  auto bU = sample("b U", [&](double r) { return co.b(r) * co.U(r); }, opt,
                   ex && !ex->zero_b ? std::optional<double>(ex->bU) : std::nullopt);
  to_zero(bU, opt);
  auto cag = sample("c - a g", [&](double r) { return co.c(r) - co.a(r) * co.g(r); }, opt,
                    expect(&SpecialExponents::c_ag));
  {
    const int sg = deep_sign(cag);
    if (sg > 0 || cag.identically_zero)
      cag.verdict = V::Holds;
    else
      cag.verdict = by_exponent(cag.exponent, 0.0, opt.margin, V::Holds, sg < 0 ? V::Fails : V::Inconclusive);
    cross_check(cag, opt);
  }
  rep.energy_bu = both(bU.verdict, cag.verdict);

  auto Da = sample("D / a", [&](double r) { return co.D(r) / co.a(r); }, opt, expect(&SpecialExponents::D_a));
  {
    const int sg = deep_sign(Da);
    if (sg < 0 || Da.identically_zero)
      Da.verdict = V::Holds;
    else
      Da.verdict = by_exponent(Da.exponent, 0.0, opt.margin, V::Holds, sg > 0 ? V::Fails : V::Inconclusive);
    cross_check(Da, opt);
  }
  rep.energy_d = Da.verdict;
  rep.origin_energy = either(rep.energy_bu, rep.energy_d);

  for (auto* s : {&w, &wi, &invf, &aUV, &bV, &bU, &cag, &Da}) rep.sequences.push_back(std::move(*s));
  return rep;
}

GStructure g_sign_structure(const PohozaevCoeffs& co, const Params& params) {
  return co.constants() ? closed_form_structure(co, params) : sampled_structure(co, params);
}

ConditionVerdict ConditionReport::overall() const {
  V out = V::Holds;
  for (V v : verdicts) out = both(out, v);
  return out;
}

namespace {

ConditionReport assemble(const PohozaevCoeffs& co, const Params& params, const LimitOptions& opt, V regularity,
                         bool prefer_d, bool prefer_zeros) {
  ConditionReport rep;
  rep.verdicts[0] = regularity;
  rep.limits = limit_conditions(co, params, opt);
  rep.verdicts[1] = rep.limits.integrability;
  rep.verdicts[2] = rep.limits.origin_limits;

  const V first = prefer_d ? rep.limits.energy_d : rep.limits.energy_bu;
  const V second = prefer_d ? rep.limits.energy_bu : rep.limits.energy_d;
  rep.verdicts[3] = either(first, second);
  if (first == V::Holds)
    rep.energy_route = prefer_d ? "d" : "bu";
  else if (second == V::Holds)
    rep.energy_route = prefer_d ? "bu" : "d";

  rep.g = g_sign_structure(co, params);
  const auto& g = rep.g;
  if (g.polish_failed) {
    rep.verdicts[4] = V::Inconclusive;
    rep.notes.push_back("root polishing failed");
  } else if (!g.has_negative_part) {
    rep.verdicts[4] = V::Fails;
    rep.notes.push_back("G has no negative part");
  } else {
    const bool a = g.single_sign_change, b = g.zeros_nonpositive_D;
    if (prefer_zeros ? b : a)
      rep.g_route = prefer_zeros ? "zeros" : "single";
    else if (prefer_zeros ? a : b)
      rep.g_route = prefer_zeros ? "single" : "zeros";
    rep.verdicts[4] = rep.g_route.empty() ? V::Fails : V::Holds;
  }
  for (const auto& n : rep.limits.notes) rep.notes.push_back(n);
  return rep;
}

}  // namespace

ConditionReport check_all(const Params& params, const LimitOptions& opt) {
  const auto co = coeffs(special_fgh(params), params, CoeffMode::ClosedForm);
  const bool two = params.dim == 2;
  auto rep = assemble(co, params, opt, V::Holds, two, two);
  rep.notes.insert(rep.notes.begin(), "f = r^(N-1), h = 1 and g are analytic on (0, inf)");
  return rep;
}

ConditionReport check_all(const FghTriple& triple, const Params& params, const LimitOptions& opt) {
  V regularity = V::Holds;
  std::vector<std::string> notes;
  if (triple.derivative_order < 3) {
    regularity = V::Inconclusive;
    notes.push_back("f and h derivatives are available only to order " + std::to_string(triple.derivative_order));
  }
  if (!triple_positive(triple)) {
    regularity = V::Fails;
    notes.push_back("f or h is not positive on the sample");
  }
  if (regularity != V::Holds) {
    ConditionReport rep;
    rep.verdicts[0] = regularity;
    rep.notes = notes;
    return rep;
  }
  const auto co = coeffs(triple, params, CoeffMode::Generic);
  auto rep = assemble(co, params, opt, regularity, false, false);
  rep.notes.insert(rep.notes.begin(), notes.begin(), notes.end());
  return rep;
}

}  // namespace gslab
