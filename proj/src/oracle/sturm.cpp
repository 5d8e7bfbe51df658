#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyperspin/kernels.hpp"
#include "hyperspin/oracle.hpp"

namespace hyperspin::oracle {

namespace {

std::vector<double> squares(const std::vector<double>& e) {
  std::vector<double> s(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) s[i] = e[i] * e[i];
  return s;
}

double gershgorin_lower(const TridiagonalOperator& T) {
  double lo = std::numeric_limits<double>::infinity();
  const std::size_t n = T.size();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::fabs(T.offdiag[i - 1]);
    if (i + 1 < n) radius += std::fabs(T.offdiag[i]);
    lo = std::min(lo, T.diag[i] - radius);
  }
  return lo;
}

// Solves (T - shift) x = b in place by Gaussian elimination with partial
// pivoting; the factorization has a second superdiagonal after row swaps.
void shifted_solve(const TridiagonalOperator& T, double shift, std::vector<double>& b) {
  const std::size_t n = T.size();
  std::vector<double> dl(T.offdiag), d(n), du(T.offdiag), du2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = T.diag[i] - shift;
  std::vector<char> swapped(n, 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (std::fabs(d[k]) >= std::fabs(dl[k])) {
      if (d[k] == 0.0) d[k] = kernels::kPivotFloor;
      const double f = dl[k] / d[k];
      d[k + 1] -= f * du[k];
      b[k + 1] -= f * b[k];
      dl[k] = f;
    } else {
      swapped[k] = 1;
      const double f = d[k] / dl[k];
      d[k] = dl[k];
      const double tmp = d[k + 1];
      d[k + 1] = du[k] - f * tmp;
      if (k + 2 < n) {
        du2[k] = du[k + 1];
        du[k + 1] = -f * du2[k];
      }
      du[k] = tmp;
      std::swap(b[k], b[k + 1]);
      b[k + 1] -= f * b[k];
      dl[k] = f;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = kernels::kPivotFloor;
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t k = n - 2; k-- > 0;)
    b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
}

}  // namespace

long sturm_count(const TridiagonalOperator& T, double x) {
  const auto e2 = squares(T.offdiag);
  const double shifts[kernels::kSturmLanes] = {x, x, x, x};
  long counts[kernels::kSturmLanes];
  kernels::active().sturm_count4(T.diag, e2, shifts, counts);
  return counts[0];
}

std::vector<double> sturm_bisection(const TridiagonalOperator& T, long k, double tol) {
  return sturm_bisection(T, 0, k, tol);
}

std::vector<double> sturm_bisection(const TridiagonalOperator& T, long first, long count,
                                    double tol) {
  const long n = static_cast<long>(T.size());
  if (first < 0 || count < 0 || first + count > n)
    throw std::out_of_range("sturm_bisection: eigenvalue index out of range");
  if (count == 0) return {};
  if (!(tol > 0.0)) throw std::invalid_argument("sturm_bisection: tol must be positive");

  const auto& kern = kernels::active();
  const auto e2 = squares(T.offdiag);
  constexpr int L = kernels::kSturmLanes;

  double lower = gershgorin_lower(T);
  lower -= 1e-12 * std::max(1.0, std::fabs(lower));
  double upper = std::max(1.0, std::fabs(lower));
  for (;;) {
    const double s[L] = {upper, upper, upper, upper};
    long c[L];
    kern.sturm_count4(T.diag, e2, s, c);
    if (c[0] >= first + count) break;
    upper *= 4.0;
  }

  // Eigenvalue first + j lies in [lo[j], hi[j]).
  std::vector<double> lo(count, lower), hi(count, upper);
  auto resolved = [&](long j) {
    const double w = hi[j] - lo[j];
    return w <= tol || w <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(hi[j]);
  };
  std::vector<long> open;
  for (;;) {
    open.clear();
    for (long j = 0; j < count; ++j)
      if (!resolved(j)) open.push_back(j);
    if (open.empty()) break;

    double shifts[L];
    const long u = std::min<long>(static_cast<long>(open.size()), L);
    for (int lane = 0; lane < L; ++lane) {
      const long j = open[lane % u];
      const long share = L / u + (lane % u < L % u ? 1 : 0);
      const long slot = lane / u;
      shifts[lane] = lo[j] + (hi[j] - lo[j]) * static_cast<double>(slot + 1) / (share + 1);
    }
    long counts[L];
    kern.sturm_count4(T.diag, e2, shifts, counts);
    for (int lane = 0; lane < L; ++lane) {
      const double x = shifts[lane];
      for (long j = 0; j < count; ++j) {
        if (!(x > lo[j] && x < hi[j])) continue;
        if (counts[lane] > first + j)
          hi[j] = x;
        else
          lo[j] = x;
      }
    }
  }
  std::vector<double> out(count);
  for (long j = 0; j < count; ++j) out[j] = 0.5 * (lo[j] + hi[j]);
  return out;
}

std::vector<double> eigen_profile(const TridiagonalOperator& T, double lambda) {
  const std::size_t n = T.size();
  std::vector<double> v(n, 1.0);
  const double shift = lambda + 1e-13 * (1.0 + std::fabs(lambda));
  for (int it = 0; it < 4; ++it) {
    shifted_solve(T, shift, v);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm * T.h);
    for (double& x : v) x /= norm;
  }
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::fabs(x));
  double sign = 1.0;
  for (double x : v)
    if (std::fabs(x) > 1e-3 * peak) {
      sign = x < 0.0 ? -1.0 : 1.0;
      break;
    }
  for (std::size_t i = 0; i < n; ++i) v[i] *= sign / std::sqrt(T.weight[i]);
  return v;
}

}  // namespace hyperspin::oracle
