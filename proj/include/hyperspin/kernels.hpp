#pragma once

// Data-parallel inner loops of the eigenvalue oracle.
//
// Each kernel has a scalar reference implementation and an AVX2 variant.
// The active implementation is chosen once at startup from CPUID; setting
// HYPERSPIN_ISA=scalar in the environment forces the reference path.
//
// sturm_count4 is required to be bit-identical across ISAs (same operation
// order per lane, no fused multiply-add). The reductions may differ in the
// last bits because the summation order differs.

#include <cstddef>
#include <span>
#include <string_view>

namespace hyperspin::kernels {

enum class Isa { scalar, avx2 };

/// Number of shifts processed by one sturm_count4 call.
inline constexpr int kSturmLanes = 4;

/// For the symmetric tridiagonal matrix with diagonal `diag` and squared
/// off-diagonal `offdiag_sq` (size n-1), writes the number of eigenvalues
/// strictly below each of the four shifts.
using SturmCount4Fn = void (*)(std::span<const double> diag, std::span<const double> offdiag_sq,
                               const double* shifts, long* counts);

/// sum_i x_i * y_i * w_i
using WeightedDotFn = double (*)(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> w);

/// y = T x for the symmetric tridiagonal T (diag, offdiag).
using TridiagMatvecFn = void (*)(std::span<const double> diag, std::span<const double> offdiag,
                                 std::span<const double> x, std::span<double> y);

struct KernelTable {
  Isa isa;
  SturmCount4Fn sturm_count4;
  WeightedDotFn weighted_dot;
  TridiagMatvecFn tridiag_matvec;
};

namespace scalar {
void sturm_count4(std::span<const double> diag, std::span<const double> offdiag_sq,
                  const double* shifts, long* counts);
double weighted_dot(std::span<const double> x, std::span<const double> y,
                    std::span<const double> w);
void tridiag_matvec(std::span<const double> diag, std::span<const double> offdiag,
                    std::span<const double> x, std::span<double> y);
}  // namespace scalar

namespace avx2 {
bool compiled();
void sturm_count4(std::span<const double> diag, std::span<const double> offdiag_sq,
                  const double* shifts, long* counts);
double weighted_dot(std::span<const double> x, std::span<const double> y,
                    std::span<const double> w);
void tridiag_matvec(std::span<const double> diag, std::span<const double> offdiag,
                    std::span<const double> x, std::span<double> y);
}  // namespace avx2

/// Whether the running CPU can execute the given ISA's kernels.
bool supported(Isa isa);

/// The dispatch table in use. Thread-safe after first call.
const KernelTable& active();

/// Table for a specific ISA; throws if the ISA is unsupported here.
const KernelTable& table(Isa isa);

std::string_view to_string(Isa isa);

/// Pivots with magnitude below this are replaced by -kPivotFloor.
inline constexpr double kPivotFloor = 1e-300;

}  // namespace hyperspin::kernels
