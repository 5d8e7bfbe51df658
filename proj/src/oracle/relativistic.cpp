#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "hyperspin/kernels.hpp"
#include "hyperspin/oracle.hpp"
#include "hyperspin/radial_operators.hpp"

namespace hyperspin::oracle {

namespace {

using cd = std::complex<double>;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

std::vector<double> shifted_branches(const std::vector<double>& X, const FieldConfig& cfg,
                                     double kappa, double eps_cut) {
  std::vector<double> out;
  for (LevelKind b : {LevelKind::rel_gprime, LevelKind::rel_phi0prime})
    for (double x : X)
      if (auto e = relativistic_from_x(b, x, cfg, kappa); e && *e < eps_cut) out.push_back(*e);
  std::sort(out.begin(), out.end());
  return out;
}

constexpr double kMatchTol = 1e-6;

}  // namespace

CoupledOperator discretize_coupled(int m, const FieldConfig& cfg, const Grid& grid) {
  cfg.validate();
  CoupledOperator op;
  op.H = selfadjoint_discretize(Component::Psi2, m, cfg, grid);
  op.M = cfg.M;
  const RadialFunction unit =
      RadialFunction::analytic([](const Jet& x) { return Jet::constant(1.0, x.order()); });
  const RadialFunction q = commutator_action(unit, m, cfg);
  op.beta.resize(op.H.size());
  for (std::size_t i = 0; i < op.beta.size(); ++i) op.beta[i] = q(op.H.r[i]) / cfg.M;
  return op;
}

long coupled_count(const CoupledOperator& op, double eps) {
  const std::size_t n = op.H.size();
  const double shift = op.M * op.M - eps * eps;
  const cd i(0.0, 1.0);
  long negatives = 0;
  Eigen::Matrix2cd D, Dinv;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = op.H.diag[k] + shift;
    const cd c = i * eps * op.beta[k];
    D << a, c, std::conj(c), a;
    if (k > 0) {
      const double e = op.H.offdiag[k - 1];
      D -= (e * e) * Dinv;
    }
    // Hermitian 2x2 pivot: inertia from trace and determinant.
    const double d00 = D(0, 0).real(), d11 = D(1, 1).real();
    double det = d00 * d11 - std::norm(D(0, 1));
    if (std::fabs(det) < kernels::kPivotFloor) det = -kernels::kPivotFloor;
    if (det < 0.0)
      negatives += 1;
    else if (d00 + d11 < 0.0)
      negatives += 2;
    Dinv << d11 / det, -D(0, 1) / det, -D(1, 0) / det, d00 / det;
  }
  return negatives;
}

std::vector<double> coupled_eigenvalues(const CoupledOperator& op, double eps_cut, double tol) {
  const double floor_eps = 1e-12 * std::max(1.0, eps_cut);
  const long base = coupled_count(op, floor_eps);
  const long total = coupled_count(op, eps_cut) - base;
  std::vector<double> out;
  for (long j = 0; j < total; ++j) {
    double lo = floor_eps, hi = eps_cut;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (coupled_count(op, mid) - base > j)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

std::vector<double> companion_eigenvalues(const CoupledOperator& op, double eps_cut) {
  const Eigen::Index n = static_cast<Eigen::Index>(op.H.size());
  if (n > 400) throw std::invalid_argument("companion_eigenvalues: grid too large for a dense solve");
  const Eigen::Index d = 2 * n;
  const cd i(0.0, 1.0);
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
  const double m2 = op.M * op.M;
  for (Eigen::Index b = 0; b < 2; ++b) {
    for (Eigen::Index k = 0; k < n; ++k) {
      K(b * n + k, b * n + k) = op.H.diag[k] + m2;
      if (k + 1 < n) {
        K(b * n + k, b * n + k + 1) = op.H.offdiag[k];
        K(b * n + k + 1, b * n + k) = op.H.offdiag[k];
      }
    }
  }
  // Q(eps) = K + eps C - eps^2 with C = [[0, i beta], [-i beta, 0]]
  for (Eigen::Index k = 0; k < n; ++k) {
    C(k, n + k) = i * op.beta[k];
    C(n + k, k) = -i * op.beta[k];
  }
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  L.topRightCorner(d, d).setIdentity();
  L.bottomLeftCorner(d, d) = K;
  L.bottomRightCorner(d, d) = C;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(L, false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("companion_eigenvalues: eigensolver failed");
  std::vector<double> out;
  for (const cd& ev : solver.eigenvalues()) {
    const double re = ev.real();
    if (re > 0.0 && re < eps_cut && std::fabs(ev.imag()) < 1e-8 * std::max(1.0, re))
      out.push_back(re);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RelativisticResult solve_relativistic_coupled(int m, const FieldConfig& cfg, const Grid& grid,
                                              long k, std::span<const double> kappas,
                                              const OracleOptions& opt) {
  cfg.validate();
  static const double kDefaultKappas[] = {1.0, 2.0};
  if (kappas.empty()) kappas = kDefaultKappas;

  RelativisticResult res;
  const double x_th = asymptotic_threshold(Component::Psi2, m, cfg);
  res.eps_cut = std::numeric_limits<double>::infinity();
  for (double kappa : kappas)
    for (LevelKind b : {LevelKind::rel_gprime, LevelKind::rel_phi0prime})
      res.eps_cut = std::min(res.eps_cut, *relativistic_from_x(b, x_th, cfg, kappa));

  // Phi2 branch: the scalar Psi2 levels with X = eps^2 - M^2.
  const OracleResult scalar = solve_nonrel(Component::Psi2, m, cfg, grid, k, opt);
  for (double x : scalar.eigenvalues) res.phi2.push_back(std::sqrt(cfg.M * cfg.M + x));

  std::vector<std::vector<double>> coupled_levels;
  std::vector<std::vector<std::vector<double>>> decoupled_levels(kappas.size());
  std::vector<std::vector<bool>> matches(kappas.size());
  Grid g = grid;
  for (int level = 0; level < 2; ++level, g = g.refined()) {
    const CoupledOperator op = discretize_coupled(m, cfg, g);
    if (level == 0 && cfg.B != 0.0) {
      // Away from the origin, where q is free of the 1/sinh^2 cancellation.
      double sum = 0.0;
      long used = 0;
      for (std::size_t j = 0; j < op.beta.size(); ++j) {
        if (op.H.r[j] < 0.2 || op.H.r[j] > 5.0) continue;
        sum += op.beta[j] * cfg.M / cfg.B;
        ++used;
      }
      res.measured_kappa = used > 0 ? sum / static_cast<double>(used) : 0.0;
    }
    auto coupled = coupled_eigenvalues(op, res.eps_cut, opt.tol);
    const long below = sturm_count(op.H, x_th);
    const auto X = sturm_bisection(op.H, below, opt.tol);
    for (std::size_t h = 0; h < kappas.size(); ++h) {
      auto dec = shifted_branches(X, cfg, kappas[h], res.eps_cut);
      matches[h].push_back(max_abs_diff(coupled, dec) < kMatchTol);
      decoupled_levels[h].push_back(std::move(dec));
    }
    coupled_levels.push_back(std::move(coupled));
    res.grids.push_back(g);
  }

  const auto& c0 = coupled_levels[0];
  const auto& c1 = coupled_levels[1];
  res.coupled_raw = c1;
  if (c0.size() == c1.size())
    for (std::size_t j = 0; j < c1.size(); ++j) res.coupled.push_back((4.0 * c1[j] - c0[j]) / 3.0);
  if (k >= 0 && static_cast<std::size_t>(k) < res.coupled.size()) res.coupled.resize(k);

  int matched = 0;
  for (std::size_t h = 0; h < kappas.size(); ++h) {
    KappaHypothesis hyp;
    hyp.kappa = kappas[h];
    const auto& d0 = decoupled_levels[h][0];
    const auto& d1 = decoupled_levels[h][1];
    if (d0.size() == d1.size())
      for (std::size_t j = 0; j < d1.size(); ++j) hyp.eps.push_back((4.0 * d1[j] - d0[j]) / 3.0);
    std::vector<double> full_coupled;
    if (c0.size() == c1.size())
      for (std::size_t j = 0; j < c1.size(); ++j) full_coupled.push_back((4.0 * c1[j] - c0[j]) / 3.0);
    hyp.max_abs_diff = max_abs_diff(full_coupled, hyp.eps);
    hyp.matches = matches[h][0] && matches[h][1] && hyp.max_abs_diff < kMatchTol;
    if (hyp.matches) {
      ++matched;
      res.verified_kappa = hyp.kappa;
    }
    res.hypotheses.push_back(std::move(hyp));
  }
  if (matched != 1) res.verified_kappa.reset();
  res.stable_under_refinement = matched == 1;
  res.converged = std::all_of(scalar.converged.begin(), scalar.converged.end(),
                              [](bool b) { return b; }) &&
                  c0.size() == c1.size();
  return res;
}

}  // namespace hyperspin::oracle
