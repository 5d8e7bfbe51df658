#include <cmath>

#include "hyperspin/kernels.hpp"

namespace hyperspin::kernels::scalar {

void sturm_count4(std::span<const double> diag, std::span<const double> offdiag_sq,
                  const double* shifts, long* counts) {
  const std::size_t n = diag.size();
  for (int lane = 0; lane < kSturmLanes; ++lane) {
    const double x = shifts[lane];
    long count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double coupling = i == 0 ? 0.0 : offdiag_sq[i - 1] / q;
      q = (diag[i] - x) - coupling;
      if (std::fabs(q) < kPivotFloor) q = -kPivotFloor;
      if (q < 0.0) ++count;
    }
    counts[lane] = count;
  }
}

double weighted_dot(std::span<const double> x, std::span<const double> y,
                    std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i] * w[i];
  return s;
}

void tridiag_matvec(std::span<const double> diag, std::span<const double> offdiag,
                    std::span<const double> x, std::span<double> y) {
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += offdiag[i - 1] * x[i - 1];
    if (i + 1 < n) s += offdiag[i] * x[i + 1];
    y[i] = s;
  }
}

}  // namespace hyperspin::kernels::scalar
