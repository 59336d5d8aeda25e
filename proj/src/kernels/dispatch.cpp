#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace blowup::kernels {

const KernelTable& scalar() { return detail::kScalarTable; }

const KernelTable* avx2() {
#if defined(BLOWUP_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* forced = std::getenv("BLOWUP_KERNELS");
    if (forced && std::string_view(forced) == "scalar") return scalar();
    if (const KernelTable* t = avx2()) return *t;
    return scalar();
  }();
  return table;
}

}  // namespace blowup::kernels
