#pragma once

// Symmetric tridiagonal eigenvalues by Sturm-sequence bisection and
// eigenvectors by inverse iteration.

#include <cstddef>
#include <vector>

namespace gslab::tridiag {

struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;  // size diag.size() - 1

  std::size_t size() const noexcept { return diag.size(); }
  // Gershgorin interval containing the spectrum.
  double lower_bound() const;
  double upper_bound() const;
  // Max row sum of absolute values.
  double norm() const;
  std::vector<double> apply(const std::vector<double>& x) const;
};

// Number of eigenvalues strictly below x.
std::size_t count_below(const SymTridiag& t, double x);

// k-th smallest eigenvalue (0-based) to full double precision.
double eigenvalue(const SymTridiag& t, std::size_t k);

// Unit eigenvector for an eigenvalue computed by `eigenvalue`.
std::vector<double> eigenvector(const SymTridiag& t, double lambda);

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;
  double residual = 0.0;  // ||T v - value v||
};

// The k smallest eigenpairs. Throws ConvergenceFailure when k exceeds the
// dimension or a residual exceeds 1e-8 ||T||.
std::vector<Eigenpair> lowest(const SymTridiag& t, std::size_t k);

}  // namespace gslab::tridiag
