#include <cstdlib>
#include <string>

#include "pptgap/simd/kernels.hpp"

namespace pptgap::simd {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* forced = std::getenv("PPTGAP_SIMD");
    if (forced != nullptr && std::string(forced) == "scalar") return scalar_kernels();
    if (cpu_has_avx2() && avx2_kernels() != nullptr) return *avx2_kernels();
    return scalar_kernels();
  }();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

}  // namespace pptgap::simd
