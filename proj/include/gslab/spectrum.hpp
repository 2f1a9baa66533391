#pragma once

// Radial Schrodinger operators restricted to one spherical-harmonic sector,
//   -psi'' - (N-1)/r psi' + (W(r) + mu_j / r^2) psi,
// discretized by cell-centred finite volumes on [0, r_max] (symmetric
// tridiagonal after scaling by the square root of the cell volume), with
// Richardson extrapolation over three spacings.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gslab/core.hpp"
#include "gslab/profile.hpp"
#include "gslab/tridiagonal.hpp"

namespace gslab {

// mu_j = j (j + N - 2). For N = 1 only j = 0 (even) and j = 1 (odd, mu = 0)
// exist.
double laplace_beltrami_eigenvalue(int dim, int j);
// Dimension of the space of degree-j spherical harmonics.
long laplace_beltrami_multiplicity(int dim, int j);
// Largest sector index: 1 for N = 1, unbounded otherwise.
int max_sector(int dim);

// W(r) = smooth(r) - singular_strength * r^{-singular_exponent}. The singular
// part is averaged exactly over every cell.
struct RadialPotential {
  std::function<double(double)> smooth;
  double singular_strength = 0.0;
  double singular_exponent = 0.0;

  double operator()(double r) const;
};

struct GridSpec {
  double h = 0.05;       // cell width
  double r_max = 40.0;   // Dirichlet radius
};

struct SectorOperator {
  int dim = 3;
  int sector_j = 0;
  double mu_j = 0.0;
  RadialPotential potential;
  GridSpec spec;
  std::vector<double> centers;  // cell centres (i - 1/2) h
  std::vector<double> volumes;  // int_cell r^{N-1} dr
  tridiag::SymTridiag matrix;   // acts on u_i = sqrt(volume_i) psi_i

  // Potential seen by u = r^{(N-1)/2} psi in the Liouville form.
  double effective_potential(double r) const;
};

// Throws GridTooCoarse below 100 cells and SingularityUnresolved when the
// first-cell average of r^{-alpha} differs from its midpoint value by more
// than 50%.
SectorOperator build_sector(int dim, const RadialPotential& W, int j, const GridSpec& spec);

struct SectorEigenpair {
  double value = 0.0;
  std::vector<double> vector;  // u on the operator grid, unit 2-norm
  double residual = 0.0;
};

std::vector<SectorEigenpair> lowest_eigenpairs(const SectorOperator& op, int k);

// Eigenvalue extrapolated over spacings h, h/2, h/4.
struct ExtrapolatedEigenvalue {
  double value = 0.0;
  double uncertainty = 0.0;
  double order = 2.0;
  std::vector<double> raw;  // at h, h/2, h/4
};

// Richardson combination with observed order clamped to [1, 2].
ExtrapolatedEigenvalue richardson(double coarse, double mid, double fine);

struct Omega0Estimate {
  double value = 0.0;
  double uncertainty = 0.0;
  GridSpec grid;  // coarsest grid used
};

// Negative of the lowest eigenvalue of -Laplacian - gamma r^{-alpha} (radial
// sector). Grid: spacing min(l, 1/kappa)/20 with l = gamma^{-1/(2-alpha)}
// and kappa = sqrt(omega0), radius max(40 l, 30/kappa), adjusted until
// consistent.
// Explicit spec overrides the automatic grid. Throws NoNegativeEigenvalue.
Omega0Estimate omega0(const Params& params, std::optional<GridSpec> spec = std::nullopt);

// Params with omega0 filled in. Throws OmegaBelowThreshold unless omega
// exceeds omega0 by more than its uncertainty.
Params with_omega0(const Params& params, std::optional<GridSpec> spec = std::nullopt);

struct SectorReport {
  int j = 0;
  double mu = 0.0;
  long multiplicity = 1;
  std::vector<ExtrapolatedEigenvalue> eigenvalues;
  std::vector<double> lowest_vector;  // u on the finest grid
  std::vector<double> eps0;           // kernel threshold per eigenvalue
  int negatives = 0;                  // eigenvalues below -eps0
  int near_zero = 0;                  // eigenvalues in (-eps0, eps0)
  double max_residual = 0.0;
};

struct OperatorReport {
  std::string name;
  std::vector<SectorReport> sectors;
};

struct KernelCandidate {
  std::string op;
  int j = 0;
  double value = 0.0;
  double uncertainty = 0.0;
};

struct SpectrumReport {
  int dim = 3;
  int j_max = 0;
  int k = 0;
  GridSpec grid;                      // coarsest grid
  std::vector<double> resolutions;    // h, h/2, h/4
  std::vector<double> fine_centers;   // cell centres of the finest grid
  OperatorReport L1;
  OperatorReport L2;
  std::vector<KernelCandidate> kernel_candidates;
  // |<u, phi>| / (|u| |phi|) for the lowest L2 sector-0 vector.
  double l2_kernel_correlation = 0.0;
  // The lowest L2 sector-0 vector does not change sign.
  bool l2_kernel_positive = false;
};

// Default grid: r_max = 30/sqrt(omega), h = min(1/sqrt(omega), gamma^{-1/(2-alpha)},
// 1/sqrt(p phi0^{p-1})) / 16.
GridSpec linearized_grid(const Params& params, const RadialProfile& profile);

// L1 = -Laplacian - gamma r^-alpha + omega - p phi^{p-1} and L2 with
// coefficient 1 instead of p, sectors 0..j_max (capped at max_sector), k
// eigenvalues each.
SpectrumReport linearized_report(const Params& params, const RadialProfile& profile, int j_max, int k,
                                 std::optional<GridSpec> spec = std::nullopt);

enum class VerdictKind { Pass, Fail, Inconclusive };
const char* to_string(VerdictKind kind) noexcept;

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  int l1_sector0_negatives = 0;
  // Smallest |lambda| - eps0 over the checked L1 eigenvalues.
  double margin = 0.0;
  double min_positive_sector = 0.0;  // lowest L1 eigenvalue over sectors j >= 1
  std::vector<std::string> reasons;
};

// Pass iff L1 sector 0 has exactly one eigenvalue below -eps0, no L1 sector
// has an eigenvalue in (-eps0, eps0), and all sectors j >= 1 have positive
// minima. Inconclusive when an uncertainty exceeds its margin. Requires
// j_max >= min(N + 1, max_sector(N)) and k >= 2.
Verdict nondegeneracy_check(const SpectrumReport& report);

}  // namespace gslab
