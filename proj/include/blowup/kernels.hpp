#pragma once

#include <cstddef>
#include <span>

#include "blowup/spectral_field.hpp"

/// Data-parallel inner loops shared by the spectral operators. Each kernel
/// has a scalar reference implementation and, on x86-64, an AVX2 variant;
/// the variant is chosen once at startup from the CPU feature set.
namespace blowup::kernels {

struct Pair {
  double first = 0.0;
  double second = 0.0;
};

struct KernelTable {
  const char* name;
  /// out = a * b (complex, elementwise). out may alias a or b.
  void (*multiply)(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out);
  /// out = |u|^{2 sigma} u. out may alias u.
  void (*power_nonlinearity)(std::span<const Complex> u, int sigma, std::span<Complex> out);
  /// out = (sigma+1)|u|^{2 sigma} w + sigma |u|^{2 sigma - 2} u^2 conj(w).
  void (*linearized_power)(std::span<const Complex> u, std::span<const Complex> w, int sigma,
                           std::span<Complex> out);
  /// (sum 2 Re(r conj(u)), sum 4 Re(r conj(u)) |u|^2)
  Pair (*rate_pair)(std::span<const Complex> r, std::span<const Complex> u);
  /// (sum |u|^2, sum |u|^4)
  Pair (*moments)(std::span<const Complex> u);
  double (*max_abs)(std::span<const Complex> u);
  /// out = y + h x. out may alias x or y.
  void (*axpy)(double h, std::span<const Complex> x, std::span<const Complex> y, std::span<Complex> out);
};

const KernelTable& scalar();
/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2();
/// The dispatched table. BLOWUP_KERNELS=scalar in the environment forces the
/// reference kernels.
const KernelTable& active();

}  // namespace blowup::kernels
