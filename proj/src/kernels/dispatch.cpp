#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hyperspin/kernels.hpp"

namespace hyperspin::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::sturm_count4, &scalar::weighted_dot,
                              &scalar::tridiag_matvec};
constexpr KernelTable kAvx2{Isa::avx2, &avx2::sturm_count4, &avx2::weighted_dot,
                            &avx2::tridiag_matvec};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const KernelTable& select() {
  if (const char* forced = std::getenv("HYPERSPIN_ISA")) {
    if (std::string(forced) == "scalar") return kScalar;
  }
  return supported(Isa::avx2) ? kAvx2 : kScalar;
}

}  // namespace

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return avx2::compiled() && cpu_has_avx2();
  }
  return false;
}

const KernelTable& active() {
  static const KernelTable& t = select();
  return t;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) throw std::runtime_error("kernel ISA not supported on this machine");
  return isa == Isa::avx2 ? kAvx2 : kScalar;
}

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace hyperspin::kernels
