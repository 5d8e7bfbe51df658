#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "hyperspin/oracle.hpp"
#include "hyperspin/radial_operators.hpp"

using namespace hyperspin;
using namespace hyperspin::oracle;

namespace {

TridiagonalOperator make_tridiagonal(std::vector<double> d, std::vector<double> e) {
  TridiagonalOperator T;
  T.diag = std::move(d);
  T.offdiag = std::move(e);
  return T;
}

Eigen::VectorXd dense_eigenvalues(const TridiagonalOperator& T) {
  const long n = static_cast<long>(T.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (long i = 0; i < n; ++i) A(i, i) = T.diag[i];
  for (long i = 0; i + 1 < n; ++i) A(i, i + 1) = A(i + 1, i) = T.offdiag[i];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A, Eigen::EigenvaluesOnly).eigenvalues();
}

// A second discretization: u = sqrt(sinh r) Psi on a uniform r grid,
// -u'' + (V + 1/4 - 1/(4 sinh^2 r)) u = X u, dense symmetric eigensolver.
Eigen::VectorXd uniform_grid_levels(Component ch, int m, const FieldConfig& cfg, int n,
                                    double r_max) {
  const double h = r_max / (n + 1);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double r = (i + 1) * h, s = std::sinh(r);
    A(i, i) = 2 / (h * h) + channel_potential(ch, m, cfg, r) + 0.25 - 0.25 / (s * s);
    if (i + 1 < n) A(i, i + 1) = A(i + 1, i) = -1 / (h * h);
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_CASE("sturm bisection examples") {
  auto v = sturm_bisection(make_tridiagonal({1, 2, 3}, {0, 0}), 3, 1e-13);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(v[2] == doctest::Approx(3.0).epsilon(1e-12));
  v = sturm_bisection(make_tridiagonal({2, 2}, {1}), 2, 1e-13);
  CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(sturm_bisection(make_tridiagonal({2, 2}, {1}), 3, 1e-13), std::out_of_range);
}

TEST_CASE("property: random symmetric tridiagonal N=50 against a dense eigensolver") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> G(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> d(50), e(49);
    for (double& x : d) x = 3 * G(rng);
    for (double& x : e) x = G(rng);
    const auto T = make_tridiagonal(d, e);
    const Eigen::VectorXd ref = dense_eigenvalues(T);
    const auto got = sturm_bisection(T, 50, 1e-12);
    for (int i = 0; i < 50; ++i) CHECK(got[i] == doctest::Approx(ref(i)).epsilon(1e-10).scale(1.0));
    const auto mid = sturm_bisection(T, 20, 5, 1e-12);
    for (int i = 0; i < 5; ++i) CHECK(std::fabs(mid[i] - got[20 + i]) <= 2e-12);
    for (int i = 0; i < 49; ++i) {
      const double x = 0.5 * (ref(i) + ref(i + 1));
      CHECK(sturm_count(T, x) == i + 1);
    }
  }
}

TEST_CASE("eigen profile solves the discrete problem") {
  const Grid g{1e-6, 30, 1000};
  const auto T = selfadjoint_discretize(Component::Psi2, -2, FieldConfig{5, 1}, g);
  const double lambda = sturm_bisection(T, 1, 1e-13)[0];
  const auto psi = eigen_profile(T, lambda);
  REQUIRE(psi.size() == T.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) norm += T.h * T.weight[i] * psi[i] * psi[i];
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
  double worst = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double v = std::sqrt(T.weight[i]) * psi[i];
    double Tv = T.diag[i] * v;
    if (i > 0) Tv += T.offdiag[i - 1] * std::sqrt(T.weight[i - 1]) * psi[i - 1];
    if (i + 1 < psi.size()) Tv += T.offdiag[i] * std::sqrt(T.weight[i + 1]) * psi[i + 1];
    worst = std::max(worst, std::fabs(Tv - lambda * v));
  }
  CHECK(worst < 1e-6);
  CHECK(psi[psi.size() / 10] > 0.0);
}

TEST_CASE("discretization structure") {
  const Grid g{1e-6, 30, 500};
  CHECK(needs_neumann(Component::Psi2, 0));
  CHECK(needs_neumann(Component::Psi1, 1));
  CHECK(needs_neumann(Component::Psi3, -1));
  CHECK_FALSE(needs_neumann(Component::Psi2, -2));
  const auto T = selfadjoint_discretize(Component::Psi2, 0, FieldConfig{5, 1}, g);
  CHECK(T.neumann_left);
  CHECK(T.size() == 500);
  CHECK(T.offdiag.size() == 499);
  for (double e : T.offdiag) CHECK(e < 0.0);
  CHECK(asymptotic_threshold(Component::Psi2, 0, FieldConfig{0, 1}) == doctest::Approx(0.25));
  CHECK(asymptotic_threshold(Component::Psi2, 3, FieldConfig{5, 1}) == doctest::Approx(25.25));
  CHECK(asymptotic_threshold(Component::Psi3, 3, FieldConfig{5, 1}) == doctest::Approx(30.25));
  CHECK(g.refined().N == 1001);
  CHECK(g.refined().node(2) == doctest::Approx(g.node(1)).epsilon(1e-15));
  CHECK_THROWS(Grid{-1.0, 30, 100}.validate());
}

TEST_CASE("oracle examples") {
  const FieldConfig five{5, 1};
  const Grid g;
  auto r = solve_nonrel(Component::Psi2, -2, five, g, 1);
  CHECK(r.eigenvalues[0] == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(r.converged[0]);
  r = solve_nonrel(Component::Psi2, 7, five, g);
  CHECK(r.count_below == 0);
  CHECK(r.eigenvalues.empty());
  CHECK(r.threshold == doctest::Approx(25.25));
  r = solve_nonrel(Component::Psi3, -1, five, g, 1);
  CHECK(std::fabs(r.eigenvalues[0]) < 1e-6);
  r = solve_nonrel(Component::Psi2, 0, FieldConfig{0, 1}, g);
  CHECK(r.count_below == 0);
}

TEST_CASE("oracle against a uniform-grid dense discretization") {
  const FieldConfig five{5, 1};
  const std::pair<Component, int> cases[] = {
      {Component::Psi2, -2}, {Component::Psi2, 1}, {Component::Psi1, -1}, {Component::Psi3, 2}};
  for (auto [ch, m] : cases) {
    const auto dense = uniform_grid_levels(ch, m, five, 1200, 16.0);
    const auto r = solve_nonrel(ch, m, five, Grid{}, 2);
    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k)
      CHECK(r.eigenvalues[k] == doctest::Approx(dense(k)).epsilon(5e-3).scale(1.0));
  }
}

TEST_CASE("determinism and thread independence") {
  const FieldConfig cfg{5, 1};
  const auto a = solve_nonrel(Component::Psi1, -3, cfg, Grid{1e-6, 30, 3000});
  const auto b = solve_nonrel(Component::Psi1, -3, cfg, Grid{1e-6, 30, 3000});
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.raw == b.raw);
  std::vector<NonrelProblem> problems;
  for (int m = -3; m <= 3; ++m) problems.push_back({Component::Psi2, m, cfg});
  const auto serial = solve_nonrel_sweep(problems, Grid{1e-6, 30, 3000}, {}, 1);
  const auto parallel = solve_nonrel_sweep(problems, Grid{1e-6, 30, 3000}, {}, 4);
  for (std::size_t i = 0; i < problems.size(); ++i) CHECK(serial[i].eigenvalues == parallel[i].eigenvalues);
}

TEST_CASE("second-order convergence") {
  const Grid g0{1e-6, 30, 2000};
  const std::vector<Grid> grids{g0, g0.refined(), g0.refined().refined()};
  const auto rep = convergence_study({Component::Psi2, -2, FieldConfig{5, 1}}, grids, 3);
  REQUIRE(rep.observed_order.size() == 3);
  for (double p : rep.observed_order) {
    CHECK(p > 1.9);
    CHECK(p < 2.1);
  }
  for (std::size_t k = 0; k < rep.extrapolated.size(); ++k) {
    CHECK(std::fabs(rep.extrapolated[k] - rep.values.back()[k]) <= rep.error_estimate[k] * 10 + 1e-12);
  }
  CHECK(rep.extrapolated[0] == doctest::Approx(5.0).epsilon(1e-7));
  const std::vector<Grid> two{g0, g0.refined()};
  CHECK_THROWS(convergence_study({Component::Psi2, -2, FieldConfig{5, 1}}, two, 1));
}

TEST_CASE("ground state is insensitive to r_max") {
  const FieldConfig cfg{5, 1};
  const auto a = solve_nonrel(Component::Psi2, -2, cfg, Grid{1e-6, 30, 8000}, 1);
  const auto b = solve_nonrel(Component::Psi2, -2, cfg, Grid{1e-6, 40, 10667}, 1);
  CHECK(std::fabs(a.eigenvalues[0] - b.eigenvalues[0]) < 1e-9);
}

TEST_CASE("coupled problem: block inertia against the dense companion form") {
  const Grid small{0.05, 20, 100};
  const auto op = discretize_coupled(-2, FieldConfig{5, 1}, small);
  const double cut = 2.2;
  const auto a = coupled_eigenvalues(op, cut, 1e-13);
  const auto b = companion_eigenvalues(op, cut);
  REQUIRE(a.size() == b.size());
  REQUIRE(!a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10));
  CHECK(coupled_count(op, cut) == static_cast<long>(a.size()));

  const auto flat = discretize_coupled(0, FieldConfig{0, 1}, small);
  for (double x : flat.beta) CHECK(x == 0.0);
}

TEST_CASE("coupled oracle selects one kappa") {
  const auto r = solve_relativistic_coupled(-2, FieldConfig{5, 1}, Grid{1e-6, 30, 2000});
  REQUIRE(r.verified_kappa);
  CHECK(*r.verified_kappa == 1.0);
  CHECK(r.stable_under_refinement);
  CHECK(r.measured_kappa == doctest::Approx(1.0).epsilon(1e-10));
  int matches = 0;
  for (const auto& h : r.hypotheses) matches += h.matches;
  CHECK(matches == 1);
  REQUIRE(!r.phi2.empty());
  CHECK(r.phi2[0] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-6));
}
