#include <cmath>
#include <stdexcept>

#include "hyperspin/oracle.hpp"
#include "hyperspin/radial_operators.hpp"

namespace hyperspin::oracle {

namespace {

// r(t) = log(1 + e^t)
double softplus(double t) { return t > 30.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

// dr/dt = 1 - e^{-r}
double stretch(double r) { return -std::expm1(-r); }

constexpr double kResolutionLimit = 0.5;

}  // namespace

void Grid::validate() const {
  if (!(r_min > 0.0)) throw std::invalid_argument("Grid: r_min must be positive");
  if (!(r_max > r_min)) throw std::invalid_argument("Grid: r_max must exceed r_min");
  if (N < 2) throw std::invalid_argument("Grid: need at least two interior nodes");
}

double Grid::t_min() const { return std::log(std::expm1(r_min)); }
double Grid::t_max() const { return std::log(std::expm1(r_max)); }
double Grid::h() const { return (t_max() - t_min()) / static_cast<double>(N + 1); }
double Grid::node(long i) const {
  if (i == N + 1) return r_max;
  return softplus(t_min() + h() * static_cast<double>(i));
}

bool needs_neumann(Component channel, int m) { return m + channel_offset(channel) == 0; }

TridiagonalOperator selfadjoint_discretize(Component channel, int m, const FieldConfig& cfg,
                                           const Grid& grid, LeftBoundary left) {
  grid.validate();
  const long n = grid.N;
  const double t0 = grid.t_min();
  const double h = grid.h();

  TridiagonalOperator T;
  T.h = h;
  T.neumann_left = left == LeftBoundary::neumann ||
                   (left == LeftBoundary::automatic && needs_neumann(channel, m));
  // p at the half nodes t0 + (j + 1/2) h, j = 0 .. n
  std::vector<double> p(n + 1);
  for (long j = 0; j <= n; ++j) {
    const double r = softplus(t0 + (j + 0.5) * h);
    p[j] = std::sinh(r) / stretch(r);
  }
  if (T.neumann_left) p[0] = 0.0;

  T.diag.resize(n);
  T.offdiag.resize(n - 1);
  T.r.resize(n);
  T.weight.resize(n);
  const double inv_h2 = 1.0 / (h * h);
  double resolution = 0.0;
  for (long i = 0; i < n; ++i) {
    const double r = softplus(t0 + (i + 1) * h);
    const double rt = stretch(r);
    const double w = rt * std::sinh(r);
    const double V = channel_potential(channel, m, cfg, r);
    T.r[i] = r;
    T.weight[i] = w;
    T.diag[i] = (p[i] + p[i + 1]) * inv_h2 / w + V;
    resolution = std::max(resolution, h * h * rt * rt * std::fabs(V));
  }
  for (long i = 0; i + 1 < n; ++i)
    T.offdiag[i] = -p[i + 1] * inv_h2 / std::sqrt(T.weight[i] * T.weight[i + 1]);
  T.coarse = resolution > kResolutionLimit;
  return T;
}

double asymptotic_threshold(Component channel, int m, const FieldConfig& cfg) {
  constexpr double kFar = 60.0;
  return effective_potential(channel, m, cfg, kFar);
}

}  // namespace hyperspin::oracle
