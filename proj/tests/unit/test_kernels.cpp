#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hyperspin/kernels.hpp"

using namespace hyperspin::kernels;

namespace {

struct Case {
  std::vector<double> d, e, e2, x, y, w;
};

Case random_case(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> G(0.0, 1.0);
  Case c;
  c.d.resize(n);
  c.e.resize(n ? n - 1 : 0);
  for (double& v : c.d) v = 4 * G(rng);
  for (double& v : c.e) v = G(rng);
  for (double v : c.e) c.e2.push_back(v * v);
  for (std::size_t i = 0; i < n; ++i) {
    c.x.push_back(G(rng));
    c.y.push_back(G(rng));
    c.w.push_back(std::fabs(G(rng)));
  }
  return c;
}

}  // namespace

TEST_CASE("dispatch") {
  const KernelTable& t = active();
  CHECK((t.isa == Isa::scalar || t.isa == Isa::avx2));
  CHECK(table(Isa::scalar).isa == Isa::scalar);
  CHECK(to_string(Isa::scalar) == "scalar");
  if (!supported(Isa::avx2)) CHECK_THROWS(table(Isa::avx2));
}

TEST_CASE("scalar sturm count against a direct pivot recurrence") {
  std::mt19937_64 rng(23);
  for (std::size_t n : {1, 2, 5, 37}) {
    const Case c = random_case(rng, n);
    const double shifts[4] = {-3.0, -0.5, 0.7, 5.0};
    long counts[4];
    scalar::sturm_count4(c.d, c.e2, shifts, counts);
    for (int k = 0; k < 4; ++k) {
      long neg = 0;
      double q = c.d[0] - shifts[k];
      neg += q < 0;
      for (std::size_t i = 1; i < n; ++i) {
        q = c.d[i] - shifts[k] - c.e2[i - 1] / q;
        neg += q < 0;
      }
      CHECK(counts[k] == neg);
    }
  }
}

TEST_CASE("AVX2 kernels reproduce the scalar reference") {
  if (!supported(Isa::avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  const KernelTable& ref = table(Isa::scalar);
  const KernelTable& simd = table(Isa::avx2);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> U(-10.0, 10.0);
  for (std::size_t n : {1, 2, 3, 4, 5, 7, 8, 9, 63, 64, 65, 1000, 4097}) {
    const Case c = random_case(rng, n);
    for (int trial = 0; trial < 5; ++trial) {
      double shifts[4];
      for (double& s : shifts) s = U(rng);
      long a[4], b[4];
      ref.sturm_count4(c.d, c.e2, shifts, a);
      simd.sturm_count4(c.d, c.e2, shifts, b);
      for (int k = 0; k < 4; ++k) CHECK(a[k] == b[k]);
    }
    const double da = ref.weighted_dot(c.x, c.y, c.w), db = simd.weighted_dot(c.x, c.y, c.w);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::fabs(c.x[i] * c.y[i] * c.w[i]);
    CHECK(std::fabs(da - db) <= 1e-14 * mag + 1e-300);
    std::vector<double> ya(n), yb(n);
    ref.tridiag_matvec(c.d, c.e, c.x, ya);
    simd.tridiag_matvec(c.d, c.e, c.x, yb);
    for (std::size_t i = 0; i < n; ++i) CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-15).scale(1.0));
  }
}

TEST_CASE("sturm count with a zero pivot stays finite") {
  // eigenvalues 0.4679, 1.6527, 3.8794; the shift 1 makes the first pivot zero
  const std::vector<double> d{1.0, 3.0, 2.0}, e2{1.0, 1.0};
  const double shifts[4] = {1.0, 0.0, 2.0, 4.0};
  long counts[4];
  active().sturm_count4(d, e2, shifts, counts);
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 0);
  CHECK(counts[2] == 2);
  CHECK(counts[3] == 3);
}
