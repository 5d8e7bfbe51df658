#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include "hyperspin/wavefunctions.hpp"

using namespace hyperspin;

namespace {

const Component kChannels[] = {Component::Psi1, Component::Psi2, Component::Psi3};

// 2F1(-n, b; c; z) from the contiguous relation in the first parameter:
// (c + k) F(-k-1) = (2k + c - (b + k) z) F(-k) + k (z - 1) F(-k+1).
double contiguous_2F1(int n, double b, double c, double z) {
  double prev = 1.0, cur = 1.0 - b * z / c;
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + c - (b + k) * z) * cur + k * (z - 1) * prev) / (c + k);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

TEST_CASE("terminating 2F1 examples") {
  CHECK(terminating_2F1(0, 1.7, 2.3, -5.0) == 1.0);
  CHECK(terminating_2F1(1, 2.0, 3.0, -1.0) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(terminating_2F1(3, 1.3, 2.5, -4.0) ==
        doctest::Approx(contiguous_2F1(3, 1.3, 2.5, -4.0)).epsilon(1e-13));
  CHECK_THROWS_AS(hypergeo_series(2, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(terminating_2F1(2, 1.0, 2.0, 0.5), std::domain_error);
}

TEST_CASE("property: terminating 2F1 against two oracles") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> Ub(-12.0, 4.0), Uc(1.0, 14.0), Uy(-30.0, 0.0), Uy_inner(-1.0, 0.0);
  for (int i = 0; i < 300; ++i) {
    const int n = static_cast<int>(rng() % 9);
    const double b = Ub(rng), c = Uc(rng), y = i % 2 ? Uy(rng) : Uy_inner(rng);
    const double lib = terminating_2F1(n, b, c, y);
    const double rec = contiguous_2F1(n, b, c, y);
    double scale = 1.0;
    // sum of |terms| bounds the attainable accuracy of any summation order
    const auto s = hypergeo_series(n, b, c);
    for (int k = 0; k <= n; ++k) scale = std::max(scale, static_cast<double>(std::fabs(s.coefficients[k] * std::pow(y, k))));
    CHECK(std::fabs(lib - rec) <= 1e-12 * scale);
    // Boost rejects |y| > 1 even for terminating series.
    if (y >= -1.0)
      CHECK(std::fabs(lib - boost::math::hypergeometric_pFq({double(-n), b}, {c}, y)) <=
            1e-12 * scale);
  }
}

TEST_CASE("normalize") {
  const auto decay = RadialFunction::analytic([](const Jet& r) { return exp(-2.0 * r); },
                                              [](double r) { return std::exp(-2 * r); });
  const NormResult nr = normalize(decay, 30.0);
  CHECK(nr.norm == doctest::Approx(1.0 / 15.0).epsilon(1e-12));
  CHECK_FALSE(nr.divergent);
  const auto zero = RadialFunction::analytic([](const Jet& r) { return 0.0 * r; },
                                             [](double) { return 0.0; });
  CHECK(normalize(zero, 30.0).norm == 0.0);
  const auto grow = RadialFunction::analytic([](const Jet& r) { return exp(r); },
                                             [](double r) { return std::exp(r); });
  CHECK(normalize(grow, 10.0).divergent);

  const BoundWavefunction psi = radial_wavefunction(Component::Psi2, -2, 0, FieldConfig{5, 1});
  const double n30 = normalize(psi.function(), 30.0).norm;
  const double n60 = normalize(psi.function(), 60.0).norm;
  CHECK(n30 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(n30 - n60) < 1e-12);
}

TEST_CASE("wavefunction examples") {
  const FieldConfig five{5, 1};
  const BoundWavefunction g = radial_wavefunction(Component::Psi2, -2, 0, five);
  CHECK(g.exponents.A == -6.0);
  CHECK(g.exponents.C == 1.0);
  CHECK(node_count(g) == 0);
  CHECK(g.level == 2.5);
  CHECK(node_count(radial_wavefunction(Component::Psi2, -2, 2, five)) == 2);
  // leading power r^{2C} at the origin
  const double ratio1 = g(1e-3) / std::pow(1e-3, 2.0), ratio2 = g(2e-3) / std::pow(2e-3, 2.0);
  CHECK(ratio1 == doctest::Approx(ratio2).epsilon(1e-5));
  CHECK(g(0.0) == 0.0);
  CHECK_THROWS_AS(radial_wavefunction(Component::Psi2, 7, 0, five), std::invalid_argument);
  CHECK(g.tail_exponent() == doctest::Approx(-9.0));
}

TEST_CASE("ode residual and its sensitivity") {
  const BoundWavefunction a = radial_wavefunction(Component::Psi2, -2, 0, FieldConfig{5, 1});
  CHECK(ode_residual(a) < 1e-8);
  const BoundWavefunction b = radial_wavefunction(Component::Psi1, -1, 1, FieldConfig{6, 1});
  CHECK(ode_residual(b) < 1e-8);
  CHECK(ode_residual(a, a.level + 0.1) > 1e-2);
}

TEST_CASE("property: residual and nodes for every bound state with B <= 20, n <= 10") {
  int states = 0;
  for (double B : {0.5, 2.0, 5.0, 7.5, 10.0, 20.0, -5.0})
    for (Component ch : kChannels)
      for (int m = -8; m <= 20; ++m) {
        const FieldConfig cfg{B, 1};
        for (int n = 0; n < std::min(bound_state_count(ch, m, cfg), 11); ++n) {
          const BoundWavefunction psi = radial_wavefunction(ch, m, n, cfg);
          ++states;
          CHECK(ode_residual(psi) < 1e-8);
          CHECK(node_count(psi) == n);
        }
      }
  CHECK(states > 1000);
}

TEST_CASE("property: orthogonality at fixed (channel, m, B)") {
  for (double B : {2.0, 5.0, 10.0})
    for (Component ch : kChannels)
      for (int m : {-6, -1, 0, 1, 3}) {
        const FieldConfig cfg{B, 1};
        std::vector<RadialFunction> fs;
        for (int n = 0; n < std::min(bound_state_count(ch, m, cfg), 9); ++n)
          fs.push_back(radial_wavefunction(ch, m, n, cfg).function());
        for (std::size_t i = 0; i < fs.size(); ++i) {
          CHECK(overlap(fs[i], fs[i], 40.0) == doctest::Approx(1.0).epsilon(1e-9));
          for (std::size_t j = i + 1; j < fs.size(); ++j)
            CHECK(std::fabs(overlap(fs[i], fs[j], 40.0)) < 1e-8);
        }
      }
}

TEST_CASE("negative B wavefunctions are the mirrored ones") {
  for (int n = 0; n < 3; ++n) {
    const auto a = radial_wavefunction(Component::Psi1, 2, n, FieldConfig{-5, 1});
    const auto b = radial_wavefunction(Component::Psi3, -2, n, FieldConfig{5, 1});
    for (double r : {0.3, 1.0, 4.0}) CHECK(a(r) == doctest::Approx(b(r)).epsilon(1e-13));
  }
}

TEST_CASE("value and jet evaluation agree on both sides of the re-expansion") {
  const auto psi = radial_wavefunction(Component::Psi1, -12, 8, FieldConfig{10, 1});
  for (double r = 0.1; r < 12.0; r += 0.37)
    CHECK(psi(Jet::variable(r)).value() == doctest::Approx(psi(r)).epsilon(1e-9).scale(1e-6));
}

TEST_CASE("Phi2 mode fields") {
  const FieldConfig five{5, 1};
  std::vector<double> radii;
  for (int i = 0; i < 80; ++i) radii.push_back(0.1 + 0.1 * i);
  for (int m : {-3, -2, 0, 2})
    for (int n = 0; n < std::min(bound_state_count(Component::Psi2, m, five), 4); ++n) {
      const auto p = radial_wavefunction(Component::Psi2, m, n, five);
      const double eps = std::sqrt(1.0 + 2.0 * p.level);
      const auto mode = phi2_mode_fields(p, eps);
      for (double r : {0.5, 2.0}) {
        const auto ratio = mode.fields.c[kE2](r) / mode.fields.c[kPhi2](r);
        CHECK(ratio.real() == doctest::Approx(0.0).scale(1.0));
        CHECK(ratio.imag() == doctest::Approx(-eps).epsilon(1e-13));
      }
      CHECK(mode.fields.c[kH2].is_zero());
      CHECK(mode.fields.c[kPhi0].is_zero());
      for (double res : first_order_residuals(mode.fields, m, five, eps, radii)) CHECK(res < 1e-8);
    }
  const auto p = radial_wavefunction(Component::Psi2, -2, 0, five);
  CHECK_THROWS_AS(phi2_mode_fields(p, 2.0), std::invalid_argument);
}

TEST_CASE("first-order residuals detect a wrong energy") {
  const FieldConfig five{5, 1};
  const auto p = radial_wavefunction(Component::Psi2, -2, 1, five);
  const double eps = std::sqrt(1.0 + 2.0 * p.level);
  const auto mode = phi2_mode_fields(p, eps);
  std::vector<double> radii{0.5, 1.0, 2.0};
  double worst = 0.0;
  for (double res : first_order_residuals(mode.fields, -2, five, eps * 1.01, radii))
    worst = std::max(worst, res);
  CHECK(worst > 1e-3);
}
