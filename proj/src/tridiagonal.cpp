#include "gslab/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gslab/error.hpp"

namespace gslab::tridiag {

double SymTridiag::lower_bound() const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < diag.size()) r += std::abs(off[i]);
    lo = std::min(lo, diag[i] - r);
  }
  return lo;
}

double SymTridiag::upper_bound() const {
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < diag.size()) r += std::abs(off[i]);
    hi = std::max(hi, diag[i] + r);
  }
  return hi;
}

double SymTridiag::norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double r = std::abs(diag[i]);
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < diag.size()) r += std::abs(off[i]);
    m = std::max(m, r);
  }
  return m;
}

std::vector<double> SymTridiag::apply(const std::vector<double>& x) const {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += off[i - 1] * x[i - 1];
    if (i + 1 < x.size()) s += off[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::size_t count_below(const SymTridiag& t, double x) {
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
    q = t.diag[i] - x - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

double eigenvalue(const SymTridiag& t, std::size_t k) {
  if (k >= t.size()) throw Error(Errc::ConvergenceFailure, "eigenvalue index exceeds the matrix size");
  double lo = t.lower_bound(), hi = t.upper_bound();
  const double scale = std::max(std::abs(lo), std::abs(hi));
  lo -= 1e-12 * scale + std::numeric_limits<double>::min();
  hi += 1e-12 * scale + std::numeric_limits<double>::min();
  for (int it = 0; it < 200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (count_below(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return lo + 0.5 * (hi - lo);
}

namespace {

// Solves (T - shift) x = b by Gaussian elimination with partial pivoting.
std::vector<double> shifted_solve(const SymTridiag& t, double shift, std::vector<double> b) {
  const std::size_t n = t.size();
  const double floor = std::numeric_limits<double>::epsilon() * std::max(t.norm(), 1e-300);
  // Rows hold up to three entries (diag, super, super-super) after pivoting.
  std::vector<double> d(n), u1(n, 0.0), u2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
  const std::vector<double>& sub = t.off;
  for (std::size_t i = 0; i + 1 < n; ++i) u1[i] = t.off[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(sub[i]) > std::abs(d[i])) {
      // Swap rows i and i+1.
      const double nd = sub[i], nu1 = d[i + 1], nu2 = i + 2 < n ? u1[i + 1] : 0.0;
      const double od = d[i], ou1 = u1[i];
      d[i] = nd;
      u1[i] = nu1;
      u2[i] = nu2;
      std::swap(b[i], b[i + 1]);
      const double m = od / nd;
      d[i + 1] = ou1 - m * nu1;
      if (i + 2 < n) u1[i + 1] = -m * nu2;
      b[i + 1] -= m * b[i];
    } else {
      if (d[i] == 0.0) d[i] = floor;
      const double m = sub[i] / d[i];
      d[i + 1] -= m * u1[i];
      b[i + 1] -= m * b[i];
    }
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    if (ii + 1 < n) s -= u1[ii] * x[ii + 1];
    if (ii + 2 < n) s -= u2[ii] * x[ii + 2];
    double piv = d[ii];
    if (std::abs(piv) < floor) piv = piv < 0 ? -floor : floor;
    x[ii] = s / piv;
  }
  return x;
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> eigenvector(const SymTridiag& t, double lambda) {
  const std::size_t n = t.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.1 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  for (int it = 0; it < 4; ++it) {
    x = shifted_solve(t, lambda, x);
    const double nx = norm2(x);
    if (!(nx > 0.0) || !std::isfinite(nx)) throw Error(Errc::ConvergenceFailure, "inverse iteration broke down");
    for (double& v : x) v /= nx;
  }
  // Sign convention: largest component positive.
  const auto it = std::max_element(x.begin(), x.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*it < 0.0)
    for (double& v : x) v = -v;
  return x;
}

std::vector<Eigenpair> lowest(const SymTridiag& t, std::size_t k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "at least one eigenpair must be requested");
  if (k > t.size()) throw Error(Errc::ConvergenceFailure, "more eigenpairs requested than the matrix dimension");
  const double tnorm = t.norm();
  std::vector<Eigenpair> out;
  for (std::size_t i = 0; i < k; ++i) {
    Eigenpair e;
    e.value = eigenvalue(t, i);
    e.vector = eigenvector(t, e.value);
    // Keep vectors of (numerically) repeated eigenvalues orthogonal.
    for (const auto& prev : out) {
      if (std::abs(prev.value - e.value) > 1e-10 * std::max(tnorm, 1.0)) continue;
      double dot = 0.0;
      for (std::size_t j = 0; j < e.vector.size(); ++j) dot += prev.vector[j] * e.vector[j];
      for (std::size_t j = 0; j < e.vector.size(); ++j) e.vector[j] -= dot * prev.vector[j];
      const double nv = norm2(e.vector);
      for (double& v : e.vector) v /= nv;
    }
    auto tv = t.apply(e.vector);
    for (std::size_t j = 0; j < tv.size(); ++j) tv[j] -= e.value * e.vector[j];
    e.residual = norm2(tv);
    if (!(e.residual <= 1e-8 * std::max(tnorm, 1e-300))) {
      std::ostringstream msg;
      msg << "eigenpair " << i << " residual " << e.residual << " exceeds 1e-8 ||T|| = " << 1e-8 * tnorm;
      throw Error(Errc::ConvergenceFailure, msg.str());
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace gslab::tridiag
