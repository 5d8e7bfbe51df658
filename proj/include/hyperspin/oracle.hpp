#pragma once

// Finite-difference eigenvalue oracle for the radial channel equations.
//
// The equation -(sinh r Psi')' + sinh r V Psi = X sinh r Psi is written in the
// stretched variable t with r = log(1 + e^t), which packs nodes towards r = 0
// where the potential is singular and keeps them uniform in r at large r.
// In t it is the Sturm-Liouville problem -(p Psi_t)_t + w V Psi = X w Psi
// with p = sinh r / r_t and w = r_t sinh r. The three-point discretization,
// symmetrized by v = sqrt(w) Psi, is a symmetric tridiagonal matrix whose
// eigenvalues are bracketed by Sturm counts and bisected.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hyperspin/spectra.hpp"
#include "hyperspin/types.hpp"

namespace hyperspin::oracle {

struct Grid {
  double r_min = 1e-6;
  double r_max = 30.0;
  long N = 8000;  ///< interior nodes

  void validate() const;
  double t_min() const;
  double t_max() const;
  /// Uniform spacing in t.
  double h() const;
  /// r of node i in 0 .. N+1 (0 and N+1 are the boundary points).
  double node(long i) const;
  /// Same end points, twice the intervals: every node of this grid is a node of the result.
  Grid refined() const { return {r_min, r_max, 2 * N + 1}; }
};

enum class LeftBoundary { automatic, dirichlet, neumann };

struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<double> r;       ///< interior node positions
  std::vector<double> weight;  ///< w_i, with v_i = sqrt(w_i) Psi_i
  double h = 0.0;
  bool neumann_left = false;
  bool coarse = false;  ///< h^2 r_t^2 |V| exceeds the resolution limit somewhere

  std::size_t size() const { return diag.size(); }
};

/// Neumann at r_min when the channel's regular solution does not vanish at the
/// origin (m + d = 0), Dirichlet otherwise.
bool needs_neumann(Component channel, int m);

TridiagonalOperator selfadjoint_discretize(Component channel, int m, const FieldConfig& cfg,
                                           const Grid& grid,
                                           LeftBoundary left = LeftBoundary::automatic);

/// V_eff = V + 1/4 - 1/(4 sinh^2 r) evaluated at large r: the continuum edge
/// read off the potential itself.
double asymptotic_threshold(Component channel, int m, const FieldConfig& cfg);

/// Number of eigenvalues strictly below x.
long sturm_count(const TridiagonalOperator& T, double x);

/// The k smallest eigenvalues, each bisected to width tol.
/// Throws std::out_of_range if k is not in 0 .. size().
std::vector<double> sturm_bisection(const TridiagonalOperator& T, long k, double tol);

/// Eigenvalues with index first .. first+count-1, bisected to width tol.
std::vector<double> sturm_bisection(const TridiagonalOperator& T, long first, long count,
                                    double tol);

/// Unit eigenvector (sum v_i^2 h = 1) for a converged eigenvalue, by inverse
/// iteration, returned as Psi_i = v_i / sqrt(w_i) with Psi positive at the first node.
std::vector<double> eigen_profile(const TridiagonalOperator& T, double lambda);

struct OracleOptions {
  double tol = 1e-10;              ///< bisection width
  double drift_tol = 1e-8;         ///< Richardson drift, relative to 1 + |X|
  int max_levels = 4;              ///< grids in the doubling sequence
  bool profiles = false;           ///< also return Richardson-extrapolated eigenvectors
};

struct OracleResult {
  std::vector<double> eigenvalues;  ///< Richardson-extrapolated, ascending
  std::vector<double> raw;          ///< finest-grid values
  std::vector<bool> converged;
  std::vector<double> drift;        ///< |R_last - R_previous|
  double threshold = 0.0;
  long count_below = 0;             ///< Sturm count below threshold on the first grid
  Grid grid_used;                   ///< finest grid
  std::vector<Grid> grids;
  bool coarse_warning = false;
  /// Eigenvectors at the nodes of the first grid (when requested).
  std::vector<double> profile_r;
  std::vector<double> profile_weight;
  double profile_h = 0.0;
  std::vector<std::vector<double>> profiles;
};

/// Discrete levels below the continuum threshold, at most k of them (k < 0: all).
OracleResult solve_nonrel(Component channel, int m, const FieldConfig& cfg, const Grid& grid,
                          long k = -1, const OracleOptions& opt = {});

/// Several independent (channel, m) problems, possibly on worker threads.
/// Results are in input order.
struct NonrelProblem {
  Component channel;
  int m;
  FieldConfig cfg;
};
std::vector<OracleResult> solve_nonrel_sweep(std::span<const NonrelProblem> problems,
                                             const Grid& grid, const OracleOptions& opt = {},
                                             unsigned threads = 0);

struct ConvergenceReport {
  std::vector<Grid> grids;
  std::vector<std::vector<double>> values;  ///< values[g][j]
  std::vector<double> observed_order;       ///< per eigenvalue, from the last three grids
  std::vector<double> extrapolated;         ///< Richardson from the last two grids
  std::vector<double> error_estimate;
  bool monotone = true;
};

/// Requires >= 3 grids, each a refinement of the previous one (nested nodes).
ConvergenceReport convergence_study(const NonrelProblem& problem, std::span<const Grid> grids,
                                    long k, double tol = 1e-11);

// Relativistic pair (g, M Phi0):
//   (H + M^2 - eps^2) g + i eps beta Phi~ = 0
//   (H + M^2 - eps^2) Phi~ - i eps beta g = 0
// with H the Psi2-channel operator and beta(r) = q(r) / M, q being the
// multiplier produced by -b_- a + a_+ b. Q(eps) is Hermitian for real eps,
// so the number of eigenvalues in (0, eps) is the inertia of Q(eps).

struct CoupledOperator {
  TridiagonalOperator H;        ///< Psi2 channel
  std::vector<double> beta;     ///< per interior node
  double M = 1.0;
};

CoupledOperator discretize_coupled(int m, const FieldConfig& cfg, const Grid& grid);

/// Eigenvalues of the coupled problem in (0, eps), from a block LDL^H factorization.
long coupled_count(const CoupledOperator& op, double eps);

/// Coupled eigenvalues in (0, eps_cut), bisected to width tol.
std::vector<double> coupled_eigenvalues(const CoupledOperator& op, double eps_cut, double tol);

/// Dense companion linearization [[0, I], [K, C]] (size 4N, complex) solved
/// with a general eigensolver; keeps real positive eigenvalues below eps_cut.
/// For small grids only.
std::vector<double> companion_eigenvalues(const CoupledOperator& op, double eps_cut);

struct KappaHypothesis {
  double kappa = 0.0;
  std::vector<double> eps;  ///< both shifted branches below the cut, ascending
  double max_abs_diff = 0.0;  ///< against the coupled eigenvalues (inf if counts differ)
  bool matches = false;
};

struct RelativisticResult {
  double eps_cut = 0.0;               ///< all branches discrete below this
  std::vector<double> coupled;        ///< Richardson-extrapolated coupled eigenvalues
  std::vector<double> coupled_raw;    ///< per grid level
  std::vector<double> phi2;           ///< sqrt(M^2 + X_n) from the Psi2 channel
  std::vector<KappaHypothesis> hypotheses;
  std::optional<double> verified_kappa;
  double measured_kappa = 0.0;        ///< mean of q(r)/B over the nodes
  bool stable_under_refinement = false;
  std::vector<Grid> grids;
  bool converged = false;
};

/// Solves the coupled pair on two nested grids, the decoupled shifted
/// equations for every kappa hypothesis, and the Phi2 branch.
RelativisticResult solve_relativistic_coupled(int m, const FieldConfig& cfg, const Grid& grid,
                                              long k = -1,
                                              std::span<const double> kappas = {},
                                              const OracleOptions& opt = {});

}  // namespace hyperspin::oracle
