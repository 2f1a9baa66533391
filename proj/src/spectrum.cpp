#include "gslab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gslab/error.hpp"

namespace gslab {

double laplace_beltrami_eigenvalue(int dim, int j) {
  if (dim < 1 || j < 0) throw Error(Errc::InvalidArgument, "sector index needs N >= 1 and j >= 0");
  if (j > max_sector(dim)) throw Error(Errc::InvalidArgument, "N = 1 has only the even and odd sectors");
  if (dim == 1) return 0.0;
  return static_cast<double>(j) * (j + dim - 2);
}

namespace {

long binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

long laplace_beltrami_multiplicity(int dim, int j) {
  if (dim == 1) return 1;
  return binomial(dim + j - 1, j) - binomial(dim + j - 3, j - 2);
}

int max_sector(int dim) { return dim == 1 ? 1 : 1 << 20; }

double RadialPotential::operator()(double r) const {
  double w = smooth ? smooth(r) : 0.0;
  if (singular_strength != 0.0) w -= singular_strength * std::pow(r, -singular_exponent);
  return w;
}

double SectorOperator::effective_potential(double r) const {
  const double n = dim;
  return potential(r) + (mu_j + (n - 1.0) * (n - 3.0) / 4.0) / (r * r);
}

SectorOperator build_sector(int dim, const RadialPotential& W, int j, const GridSpec& spec) {
  if (dim < 1) throw Error(Errc::DimensionInvalid, "N must be at least 1");
  if (!(spec.h > 0.0) || !(spec.r_max > 0.0)) throw Error(Errc::InvalidArgument, "grid needs h > 0, r_max > 0");
  const double cells = std::round(spec.r_max / spec.h);
  if (!(cells >= 100.0)) {
    std::ostringstream msg;
    msg << "grid has " << cells << " cells, at least 100 are required";
    throw Error(Errc::GridTooCoarse, msg.str());
  }
  const double n = dim;
  const double alpha = W.singular_exponent;
  if (W.singular_strength != 0.0) {
    if (!(alpha < n)) throw Error(Errc::SingularityUnresolved, "r^-alpha is not integrable against r^{N-1}");
    const double ratio = n / ((n - alpha) * std::pow(2.0, alpha));
    if (std::abs(ratio - 1.0) > 0.5) {
      std::ostringstream msg;
      msg << "first-cell average of r^-alpha is " << ratio << " times its midpoint value";
      throw Error(Errc::SingularityUnresolved, msg.str());
    }
  }

  SectorOperator op;
  op.dim = dim;
  op.sector_j = j;
  op.mu_j = laplace_beltrami_eigenvalue(dim, j);
  op.potential = W;
  const std::size_t m = static_cast<std::size_t>(cells);
  const double h = spec.r_max / cells;
  op.spec = {h, spec.r_max};
  op.centers.resize(m);
  op.volumes.resize(m);
  auto face = [&](std::size_t i) { return static_cast<double>(i) * h; };
  auto weight = [&](double r) { return dim == 1 ? 1.0 : std::pow(r, n - 1.0); };
  std::vector<double> pot(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = face(i), b = face(i + 1);
    op.centers[i] = a + 0.5 * h;
    op.volumes[i] = (std::pow(b, n) - std::pow(a, n)) / n;
    double w = W.smooth ? W.smooth(op.centers[i]) : 0.0;
    if (W.singular_strength != 0.0)
      w -= W.singular_strength * (std::pow(b, n - alpha) - std::pow(a, n - alpha)) / (n - alpha) / op.volumes[i];
    pot[i] = w;
  }
  auto& t = op.matrix;
  t.diag.resize(m);
  t.off.resize(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double wl = i == 0 ? 0.0 : weight(face(i));
    const double wr = weight(face(i + 1));
    // Dirichlet at r_max through a reflected ghost cell.
    const double flux = wl + (i + 1 == m ? 2.0 * wr : wr);
    double d = flux / (h * op.volumes[i]) + pot[i] + op.mu_j / (op.centers[i] * op.centers[i]);
    // Odd sector of the line: Dirichlet at the origin.
    if (i == 0 && dim == 1 && j == 1) d += 2.0 / (h * op.volumes[i]);
    t.diag[i] = d;
    if (i + 1 < m) t.off[i] = -wr / (h * std::sqrt(op.volumes[i] * op.volumes[i + 1]));
  }
  return op;
}

std::vector<SectorEigenpair> lowest_eigenpairs(const SectorOperator& op, int k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "at least one eigenpair must be requested");
  const auto pairs = tridiag::lowest(op.matrix, static_cast<std::size_t>(k));
  std::vector<SectorEigenpair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back({p.value, p.vector, p.residual});
  return out;
}

ExtrapolatedEigenvalue richardson(double coarse, double mid, double fine) {
  ExtrapolatedEigenvalue e;
  e.raw = {coarse, mid, fine};
  const double d1 = mid - coarse, d2 = fine - mid;
  double order = 2.0;
  if (d2 != 0.0 && d1 != 0.0) {
    const double observed = std::log2(std::abs(d1 / d2));
    order = std::isfinite(observed) ? std::clamp(observed, 1.0, 2.0) : 2.0;
  }
  const double factor = std::pow(2.0, order) - 1.0;
  e.order = order;
  e.value = fine + d2 / factor;
  e.uncertainty = std::abs(d2) / factor;
  return e;
}

namespace {

GridSpec refined(const GridSpec& g, int level) { return {g.h / std::pow(2.0, level), g.r_max}; }

ExtrapolatedEigenvalue lowest_extrapolated(int dim, const RadialPotential& W, int j, const GridSpec& g) {
  double raw[3];
  for (int level = 0; level < 3; ++level) {
    const auto op = build_sector(dim, W, j, refined(g, level));
    raw[level] = tridiag::eigenvalue(op.matrix, 0);
  }
  return richardson(raw[0], raw[1], raw[2]);
}

}  // namespace

Omega0Estimate omega0(const Params& params, std::optional<GridSpec> spec) {
  if (!(params.gamma > 0.0)) throw Error(Errc::NonpositiveGamma, "omega0 needs gamma > 0");
  if (!(params.alpha > 0.0) || !(params.alpha < std::min(params.dim, 2)))
    throw Error(Errc::AlphaOutOfRange, "omega0 needs 0 < alpha < min(N, 2)");
  const RadialPotential W{nullptr, params.gamma, params.alpha};
  if (spec) {
    const auto e = lowest_extrapolated(params.dim, W, 0, *spec);
    if (!(e.value < 0.0)) throw Error(Errc::NoNegativeEigenvalue, "no negative eigenvalue on the given grid");
    return {-e.value, e.uncertainty, *spec};
  }
  const double length = std::pow(params.gamma, -1.0 / (2.0 - params.alpha));
  GridSpec g{length / 20.0, 40.0 * length};
  for (int attempt = 0; attempt < 8; ++attempt) {
    // Keep the coarse grid below 20000 cells.
    if (g.r_max / g.h > 20000.0) g.h = g.r_max / 20000.0;
    const auto e = lowest_extrapolated(params.dim, W, 0, g);
    if (!(e.value < 0.0)) {
      g.r_max *= 2.0;
      continue;
    }
    const double kappa = std::sqrt(-e.value);
    const double wanted_r = 30.0 / kappa;
    const double wanted_h = std::min(length, 1.0 / kappa) / 20.0;
    const bool r_ok = wanted_r <= g.r_max * 1.0000001;
    const bool h_ok = g.h <= wanted_h * 1.0000001 || g.r_max / wanted_h > 20000.0;
    if (r_ok && h_ok) return {-e.value, e.uncertainty, g};
    g.r_max = std::max(g.r_max, wanted_r);
    g.h = std::min(g.h, wanted_h);
  }
  throw Error(Errc::NoNegativeEigenvalue, "lowest radial eigenvalue did not settle below zero");
}

Params with_omega0(const Params& params, std::optional<GridSpec> spec) {
  const auto est = omega0(params, spec);
  if (!(params.omega > est.value + est.uncertainty)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "omega = " << params.omega << " does not exceed omega0 = " << est.value << " (uncertainty "
        << est.uncertainty << ")";
    throw Error(Errc::OmegaBelowThreshold, msg.str());
  }
  Params out = params;
  out.omega0 = est.value;
  return out;
}

GridSpec linearized_grid(const Params& params, const RadialProfile& profile) {
  const double s = std::sqrt(params.omega);
  double length = 1.0 / s;
  if (params.gamma > 0.0) length = std::min(length, std::pow(params.gamma, -1.0 / (2.0 - params.alpha)));
  length = std::min(length, 1.0 / std::sqrt(params.p * std::pow(profile.phi0(), params.p - 1.0)));
  GridSpec g{length / 16.0, 30.0 / s};
  g.h = std::min(g.h, g.r_max / 100.0);
  return g;
}

namespace {

OperatorReport sector_reports(const std::string& name, int dim, const RadialPotential& W, int j_max, int k,
                              const GridSpec& g) {
  OperatorReport rep;
  rep.name = name;
  for (int j = 0; j <= j_max; ++j) {
    SectorReport s;
    s.j = j;
    s.mu = laplace_beltrami_eigenvalue(dim, j);
    s.multiplicity = laplace_beltrami_multiplicity(dim, j);
    std::vector<std::vector<double>> raw(3);
    for (int level = 0; level < 3; ++level) {
      const auto op = build_sector(dim, W, j, refined(g, level));
      if (level < 2) {
        for (int i = 0; i < k; ++i) raw[level].push_back(tridiag::eigenvalue(op.matrix, i));
      } else {
        const auto pairs = lowest_eigenpairs(op, k);
        for (const auto& p : pairs) {
          raw[level].push_back(p.value);
          s.max_residual = std::max(s.max_residual, p.residual);
        }
        s.lowest_vector = pairs.front().vector;
      }
    }
    for (int i = 0; i < k; ++i) {
      auto e = richardson(raw[0][i], raw[1][i], raw[2][i]);
      const double eps = std::max(10.0 * e.uncertainty, 1e-6);
      if (e.value < -eps) ++s.negatives;
      if (std::abs(e.value) < eps) ++s.near_zero;
      s.eps0.push_back(eps);
      s.eigenvalues.push_back(e);
    }
    rep.sectors.push_back(std::move(s));
  }
  return rep;
}

}  // namespace

SpectrumReport linearized_report(const Params& params, const RadialProfile& profile, int j_max, int k,
                                 std::optional<GridSpec> spec) {
  if (j_max < 0 || k < 1) throw Error(Errc::InvalidArgument, "need j_max >= 0 and k >= 1");
  const GridSpec g = spec ? *spec : linearized_grid(params, profile);
  SpectrumReport rep;
  rep.dim = params.dim;
  rep.j_max = std::min(j_max, max_sector(params.dim));
  rep.k = k;
  rep.grid = g;
  rep.resolutions = {g.h, g.h / 2.0, g.h / 4.0};

  const double r_first = profile.r_first();
  auto phi = [&profile, r_first](double r) { return r < r_first ? profile.phi0() : profile.value(r); };
  const double omega = params.omega, p = params.p;
  auto make = [&](double coeff) {
    return RadialPotential{[=](double r) { return omega - coeff * std::pow(phi(r), p - 1.0); }, params.gamma,
                           params.alpha};
  };
  rep.L1 = sector_reports("L1", params.dim, make(p), rep.j_max, k, g);
  rep.L2 = sector_reports("L2", params.dim, make(1.0), rep.j_max, k, g);

  for (const auto* op : {&rep.L1, &rep.L2})
    for (const auto& s : op->sectors)
      for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        if (std::abs(s.eigenvalues[i].value) < s.eps0[i])
          rep.kernel_candidates.push_back({op->name, s.j, s.eigenvalues[i].value, s.eigenvalues[i].uncertainty});

  const auto fine = build_sector(params.dim, RadialPotential{}, 0, refined(g, 2));
  rep.fine_centers = fine.centers;
  const auto& u = rep.L2.sectors.front().lowest_vector;
  double dot = 0.0, nu = 0.0, nv = 0.0, umax = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = std::sqrt(fine.volumes[i]) * phi(fine.centers[i]);
    dot += u[i] * v;
    nu += u[i] * u[i];
    nv += v * v;
    umax = std::max(umax, std::abs(u[i]));
  }
  rep.l2_kernel_correlation = std::abs(dot) / std::sqrt(nu * nv);
  const double sign = dot < 0.0 ? -1.0 : 1.0;
  rep.l2_kernel_positive =
      std::all_of(u.begin(), u.end(), [&](double x) { return sign * x > -1e-8 * umax; });
  return rep;
}

const char* to_string(VerdictKind kind) noexcept {
  switch (kind) {
    case VerdictKind::Pass: return "PASS";
    case VerdictKind::Fail: return "FAIL";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict nondegeneracy_check(const SpectrumReport& report) {
  const int required = std::min(report.dim + 1, max_sector(report.dim));
  if (report.j_max < required) {
    std::ostringstream msg;
    msg << "report covers sectors up to " << report.j_max << ", at least " << required << " are required";
    throw Error(Errc::InvalidArgument, msg.str());
  }
  if (report.k < 2) throw Error(Errc::InvalidArgument, "at least two eigenvalues per sector are required");
  Verdict v;
  bool fail = false, inconclusive = false;
  v.margin = std::numeric_limits<double>::infinity();
  v.min_positive_sector = std::numeric_limits<double>::infinity();
  for (const auto& s : report.L1.sectors) {
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      const auto& e = s.eigenvalues[i];
      const double margin = std::abs(e.value) - s.eps0[i];
      v.margin = std::min(v.margin, margin);
      std::ostringstream msg;
      if (margin < 0.0) {
        fail = true;
        msg << "L1 sector " << s.j << " eigenvalue " << e.value << " lies within eps0 = " << s.eps0[i] << " of zero";
        v.reasons.push_back(msg.str());
      } else if (e.uncertainty > margin) {
        inconclusive = true;
        msg << "L1 sector " << s.j << " eigenvalue " << e.value << " has uncertainty " << e.uncertainty
            << " above its margin " << margin;
        v.reasons.push_back(msg.str());
      }
    }
    if (s.j == 0) {
      v.l1_sector0_negatives = s.negatives;
      if (s.negatives != 1) {
        fail = true;
        v.reasons.push_back("L1 sector 0 has " + std::to_string(s.negatives) + " negative eigenvalues");
      }
    } else {
      const auto& low = s.eigenvalues.front();
      v.min_positive_sector = std::min(v.min_positive_sector, low.value);
      if (!(low.value > s.eps0.front())) {
        fail = true;
        std::ostringstream msg;
        msg << "L1 sector " << s.j << " minimum " << low.value << " is not positive";
        v.reasons.push_back(msg.str());
      }
    }
  }
  v.kind = fail ? VerdictKind::Fail : inconclusive ? VerdictKind::Inconclusive : VerdictKind::Pass;
  return v;
}

}  // namespace gslab
