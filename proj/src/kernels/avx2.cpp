// Built with -mavx2 (no -mfma). Only reached through the dispatcher after a
// CPUID check.

#include <stdexcept>

#include "hyperspin/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace hyperspin::kernels::avx2 {

#if defined(__AVX2__)

bool compiled() { return true; }

void sturm_count4(std::span<const double> diag, std::span<const double> offdiag_sq,
                  const double* shifts, long* counts) {
  const std::size_t n = diag.size();
  const __m256d x = _mm256_loadu_pd(shifts);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d floor = _mm256_set1_pd(kPivotFloor);
  const __m256d neg_floor = _mm256_set1_pd(-kPivotFloor);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

  __m256d acc = zero;
  __m256d q = one;
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d d = _mm256_set1_pd(diag[i]);
    const __m256d coupling =
        i == 0 ? zero : _mm256_div_pd(_mm256_set1_pd(offdiag_sq[i - 1]), q);
    q = _mm256_sub_pd(_mm256_sub_pd(d, x), coupling);
    const __m256d tiny = _mm256_cmp_pd(_mm256_and_pd(q, abs_mask), floor, _CMP_LT_OQ);
    q = _mm256_blendv_pd(q, neg_floor, tiny);
    const __m256d negative = _mm256_cmp_pd(q, zero, _CMP_LT_OQ);
    acc = _mm256_add_pd(acc, _mm256_and_pd(negative, one));
  }
  alignas(32) double out[4];
  _mm256_store_pd(out, acc);
  for (int lane = 0; lane < kSturmLanes; ++lane) counts[lane] = static_cast<long>(out[lane]);
}

double weighted_dot(std::span<const double> x, std::span<const double> y,
                    std::span<const double> w) {
  const std::size_t n = x.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(&x[i]), _mm256_loadu_pd(&y[i]));
    const __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(&x[i + 4]), _mm256_loadu_pd(&y[i + 4]));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(p0, _mm256_loadu_pd(&w[i])));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(p1, _mm256_loadu_pd(&w[i + 4])));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(&x[i]), _mm256_loadu_pd(&y[i]));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(p, _mm256_loadu_pd(&w[i])));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += x[i] * y[i] * w[i];
  return s;
}

void tridiag_matvec(std::span<const double> diag, std::span<const double> offdiag,
                    std::span<const double> x, std::span<double> y) {
  const std::size_t n = diag.size();
  if (n < 6) {
    scalar::tridiag_matvec(diag, offdiag, x, y);
    return;
  }
  // Boundary rows in scalar; interior rows i = 1 .. n-2 vectorized.
  y[0] = diag[0] * x[0] + offdiag[0] * x[1];
  std::size_t i = 1;
  for (; i + 4 <= n - 1; i += 4) {
    const __m256d c = _mm256_mul_pd(_mm256_loadu_pd(&diag[i]), _mm256_loadu_pd(&x[i]));
    const __m256d lo = _mm256_mul_pd(_mm256_loadu_pd(&offdiag[i - 1]), _mm256_loadu_pd(&x[i - 1]));
    const __m256d hi = _mm256_mul_pd(_mm256_loadu_pd(&offdiag[i]), _mm256_loadu_pd(&x[i + 1]));
    _mm256_storeu_pd(&y[i], _mm256_add_pd(_mm256_add_pd(c, lo), hi));
  }
  for (; i < n - 1; ++i) y[i] = diag[i] * x[i] + offdiag[i - 1] * x[i - 1] + offdiag[i] * x[i + 1];
  y[n - 1] = diag[n - 1] * x[n - 1] + offdiag[n - 2] * x[n - 2];
}

#else

bool compiled() { return false; }

void sturm_count4(std::span<const double>, std::span<const double>, const double*, long*) {
  throw std::logic_error("AVX2 kernels not compiled for this target");
}
double weighted_dot(std::span<const double>, std::span<const double>, std::span<const double>) {
  throw std::logic_error("AVX2 kernels not compiled for this target");
}
void tridiag_matvec(std::span<const double>, std::span<const double>, std::span<const double>,
                    std::span<double>) {
  throw std::logic_error("AVX2 kernels not compiled for this target");
}

#endif

}  // namespace hyperspin::kernels::avx2
