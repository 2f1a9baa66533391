#include "gslab/cli/report.hpp"

#include <cmath>

#include "gslab/cli/io.hpp"

namespace gslab::cli {

Json num(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

namespace {

Json nums(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

Json opt(const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); }

Json to_json(const ExtrapolatedEigenvalue& e) {
  return {{"value", num(e.value)}, {"uncertainty", num(e.uncertainty)}, {"order", num(e.order)}, {"raw", nums(e.raw)}};
}

Json to_json(const OperatorReport& op, bool with_vectors) {
  Json sectors = Json::array();
  for (const auto& s : op.sectors) {
    Json j;
    j["j"] = s.j;
    j["mu"] = num(s.mu);
    j["multiplicity"] = s.multiplicity;
    Json ev = Json::array();
    for (const auto& e : s.eigenvalues) ev.push_back(to_json(e));
    j["eigenvalues"] = ev;
    j["eps0"] = nums(s.eps0);
    j["negatives"] = s.negatives;
    j["near_zero"] = s.near_zero;
    j["max_residual"] = num(s.max_residual);
    if (with_vectors) j["lowest_vector"] = nums(s.lowest_vector);
    sectors.push_back(j);
  }
  return {{"name", op.name}, {"sectors", sectors}};
}

Json to_json(const LimitSequence& s) {
  Json j;
  j["name"] = s.name;
  j["exponent"] = num(s.exponent);
  j["expected"] = opt(s.expected);
  j["identically_zero"] = s.identically_zero;
  j["verdict"] = to_string(s.verdict);
  if (!s.note.empty()) j["note"] = s.note;
  j["r"] = nums(s.r);
  j["values"] = nums(s.values);
  return j;
}

}  // namespace

Json to_json(const Params& p) {
  Json j{{"N", p.dim}, {"gamma", num(p.gamma)}, {"alpha", num(p.alpha)}, {"omega", num(p.omega)}, {"p", num(p.p)}};
  j["omega0"] = opt(p.omega0);
  return j;
}

Json to_json(const StabilityRecord& r) {
  Json j;
  j["omega"] = num(r.omega);
  j["phi0"] = num(r.phi0);
  j["mass"] = num(r.mass);
  j["grad_sq"] = num(r.grad_sq);
  j["pot_int"] = num(r.pot_int);
  j["lp1"] = num(r.lp1);
  j["action"] = num(r.action);
  j["nehari"] = num(r.nehari);
  j["nehari_rel"] = num(r.nehari_rel);
  j["virial1"] = num(r.virial1);
  j["virial1_rel"] = num(r.virial1_rel);
  j["virial2"] = num(r.virial2);
  j["virial2_rel"] = num(r.virial2_rel);
  j["virial2_uncertainty"] = num(r.virial2_uncertainty);
  j["slope"] = opt(r.slope);
  j["slope_uncertainty"] = opt(r.slope_uncertainty);
  j["classification"] = r.slope && r.slope_uncertainty ? Json(to_string(classify(r))) : Json(nullptr);
  return j;
}

Json to_json(const SpectrumReport& r, bool with_vectors) {
  Json j;
  j["dim"] = r.dim;
  j["j_max"] = r.j_max;
  j["k"] = r.k;
  j["grid"] = {{"h", num(r.grid.h)}, {"r_max", num(r.grid.r_max)}};
  j["resolutions"] = nums(r.resolutions);
  j["L1"] = to_json(r.L1, with_vectors);
  j["L2"] = to_json(r.L2, with_vectors);
  Json kc = Json::array();
  for (const auto& c : r.kernel_candidates)
    kc.push_back({{"op", c.op}, {"j", c.j}, {"value", num(c.value)}, {"uncertainty", num(c.uncertainty)}});
  j["kernel_candidates"] = kc;
  j["l2_kernel_correlation"] = num(r.l2_kernel_correlation);
  j["l2_kernel_positive"] = r.l2_kernel_positive;
  return j;
}

Json to_json(const Verdict& v) {
  return {{"kind", to_string(v.kind)},
          {"l1_sector0_negatives", v.l1_sector0_negatives},
          {"margin", num(v.margin)},
          {"min_positive_sector", num(v.min_positive_sector)},
          {"reasons", v.reasons}};
}

Json to_json(const IdentityReport& r) {
  return {{"max_residual", num(r.max_residual)}, {"r_at_max", num(r.r_at_max)}, {"points", r.points}};
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["overall"] = to_string(r.overall());
  Json conds;
  for (Condition c : kAllConditions) conds[to_string(c)] = to_string(r.verdict(c));
  j["conditions"] = conds;
  j["energy_route"] = r.energy_route.empty() ? Json(nullptr) : Json(r.energy_route);
  j["g_route"] = r.g_route.empty() ? Json(nullptr) : Json(r.g_route);
  j["energy_branches"] = {{"bu", to_string(r.limits.energy_bu)}, {"d", to_string(r.limits.energy_d)}};
  Json g;
  g["kind"] = to_string(r.g.kind);
  g["kappa"] = opt(r.g.kappa);
  g["single_sign_change"] = r.g.single_sign_change;
  g["zeros_nonpositive_D"] = r.g.zeros_nonpositive_D;
  g["has_negative_part"] = r.g.has_negative_part;
  Json zeros = Json::array();
  for (const auto& z : r.g.zeros) zeros.push_back({{"r", num(z.r)}, {"D", num(z.D)}});
  g["zeros"] = zeros;
  if (!r.g.witness.empty()) g["witness"] = r.g.witness;
  j["g_structure"] = g;
  Json seq = Json::array();
  for (const auto& s : r.limits.sequences) seq.push_back(to_json(s));
  j["limit_sequences"] = seq;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const SweepResult& r) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    if (!r.records[i]) continue;
    Json row = to_json(*r.records[i]);
    row["p"] = num(r.points[i].p);
    rows.push_back(row);
  }
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"index", f.index}, {"omega", num(f.omega)}, {"p", num(f.p)}, {"message", f.message}});
  Json audit = Json::array();
  for (const auto& a : r.audit)
    audit.push_back({{"index", a.index},
                     {"omega", num(a.omega)},
                     {"p", num(a.p)},
                     {"kind", to_string(a.kind)},
                     {"virial2", num(a.virial2)},
                     {"slope", num(a.slope)}});
  return {{"rows", rows}, {"failures", failures}, {"audit", audit}, {"counterexamples", r.counterexamples()}};
}

Json envelope(const RunConfig& config, Json result) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = to_string(config.command);
  j["config"] = to_json(config);
  j["result"] = std::move(result);
  return j;
}

}  // namespace gslab::cli
