#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hyperspin/oracle.hpp"

namespace hyperspin::oracle {

namespace {

std::vector<double> richardson(const std::vector<double>& coarse, const std::vector<double>& fine) {
  std::vector<double> out(std::min(coarse.size(), fine.size()));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (4.0 * fine[j] - coarse[j]) / 3.0;
  return out;
}

void attach_profiles(OracleResult& res, const TridiagonalOperator& coarse,
                     const std::vector<double>& coarse_vals, const TridiagonalOperator& fine,
                     const std::vector<double>& fine_vals) {
  res.profile_r = coarse.r;
  res.profile_weight = coarse.weight;
  res.profile_h = coarse.h;
  const std::size_t n = coarse.size();
  for (std::size_t j = 0; j < coarse_vals.size() && j < fine_vals.size(); ++j) {
    const auto pc = eigen_profile(coarse, coarse_vals[j]);
    const auto pf = eigen_profile(fine, fine_vals[j]);
    // Coarse interior node i sits at fine interior node 2i + 1.
    std::vector<double> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = (4.0 * pf[2 * i + 1] - pc[i]) / 3.0;
    res.profiles.push_back(std::move(psi));
  }
}

}  // namespace

OracleResult solve_nonrel(Component channel, int m, const FieldConfig& cfg, const Grid& grid,
                          long k, const OracleOptions& opt) {
  OracleResult res;
  res.threshold = asymptotic_threshold(channel, m, cfg);

  std::vector<TridiagonalOperator> ops;
  std::vector<std::vector<double>> vals;
  std::vector<double> prev_rich;
  Grid g = grid;
  long wanted = 0;
  const int levels = std::max(opt.max_levels, 3);
  for (int level = 0; level < levels; ++level, g = g.refined()) {
    ops.push_back(selfadjoint_discretize(channel, m, cfg, g));
    const TridiagonalOperator& T = ops.back();
    res.coarse_warning = res.coarse_warning || T.coarse;
    const long below = sturm_count(T, res.threshold);
    if (level == 0) {
      res.count_below = below;
      wanted = k < 0 ? below : std::min(k, below);
    }
    wanted = std::min(wanted, below);
    vals.push_back(sturm_bisection(T, wanted, opt.tol));
    res.grids.push_back(g);
    if (level == 0) continue;

    auto rich = richardson(vals[level - 1], vals[level]);
    if (level >= 2) {
      res.drift.assign(rich.size(), 0.0);
      res.converged.assign(rich.size(), true);
      bool all = true;
      for (std::size_t j = 0; j < rich.size(); ++j) {
        res.drift[j] = std::fabs(rich[j] - prev_rich[j]);
        res.converged[j] = res.drift[j] < opt.drift_tol * (1.0 + std::fabs(rich[j]));
        all = all && res.converged[j];
      }
      res.eigenvalues = rich;
      if (all) break;
    }
    prev_rich = std::move(rich);
  }
  res.raw = vals.back();
  res.grid_used = res.grids.back();
  res.eigenvalues.resize(res.raw.size());
  res.converged.resize(res.raw.size(), false);
  res.drift.resize(res.raw.size(), 0.0);

  if (opt.profiles && ops.size() >= 2)
    attach_profiles(res, ops[0], vals[0], ops[1], vals[1]);
  return res;
}

std::vector<OracleResult> solve_nonrel_sweep(std::span<const NonrelProblem> problems,
                                             const Grid& grid, const OracleOptions& opt,
                                             unsigned threads) {
  std::vector<OracleResult> out(problems.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(problems.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < problems.size();) {
      const NonrelProblem& p = problems[i];
      out[i] = solve_nonrel(p.channel, p.m, p.cfg, grid, -1, opt);
    }
  };
  if (threads <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

ConvergenceReport convergence_study(const NonrelProblem& problem, std::span<const Grid> grids,
                                    long k, double tol) {
  if (grids.size() < 3) throw std::invalid_argument("convergence_study: need at least three grids");
  for (std::size_t i = 1; i < grids.size(); ++i) {
    const Grid expect = grids[i - 1].refined();
    if (grids[i].N != expect.N || grids[i].r_min != expect.r_min || grids[i].r_max != expect.r_max)
      throw std::invalid_argument("convergence_study: grids must be successive refinements");
  }
  ConvergenceReport rep;
  rep.grids.assign(grids.begin(), grids.end());
  long wanted = k;
  for (const Grid& g : grids) {
    const auto T = selfadjoint_discretize(problem.channel, problem.m, problem.cfg, g);
    const long below = sturm_count(T, asymptotic_threshold(problem.channel, problem.m, problem.cfg));
    wanted = std::min(wanted < 0 ? below : wanted, below);
    rep.values.push_back(sturm_bisection(T, wanted, tol));
  }
  for (auto& v : rep.values) v.resize(wanted);

  const std::size_t G = rep.values.size();
  for (long j = 0; j < wanted; ++j) {
    const double a = rep.values[G - 3][j], b = rep.values[G - 2][j], c = rep.values[G - 1][j];
    rep.observed_order.push_back(std::log2(std::fabs((a - b) / (b - c))));
    rep.extrapolated.push_back((4.0 * c - b) / 3.0);
    rep.error_estimate.push_back(std::fabs(c - b) / 3.0);
    for (std::size_t gi = 2; gi < G; ++gi) {
      const double d0 = rep.values[gi - 2][j] - rep.values[gi - 1][j];
      const double d1 = rep.values[gi - 1][j] - rep.values[gi][j];
      if (d0 * d1 < 0.0 || std::fabs(d1) > std::fabs(d0)) rep.monotone = false;
    }
  }
  return rep;
}

}  // namespace hyperspin::oracle
