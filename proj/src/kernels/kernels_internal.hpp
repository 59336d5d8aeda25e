#pragma once

#include "blowup/kernels.hpp"

namespace blowup::kernels::detail {

extern const KernelTable kScalarTable;
#if defined(BLOWUP_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

inline double int_pow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace blowup::kernels::detail
