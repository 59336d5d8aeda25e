#pragma once

#include <cstddef>
#include <cstdlib>
#include <new>
#include <span>
#include <vector>

#include "blowup/spectral_field.hpp"

namespace blowup {

template <class T, std::size_t Alignment = 64>
struct AlignedAllocator {
  using value_type = T;
  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Alignment>;
  };

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Alignment>&) {}

  T* allocate(std::size_t n) {
    std::size_t bytes = (n * sizeof(T) + Alignment - 1) / Alignment * Alignment;
    void* p = std::aligned_alloc(Alignment, bytes == 0 ? Alignment : bytes);
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) { std::free(p); }

  template <class U>
  bool operator==(const AlignedAllocator<U, Alignment>&) const { return true; }
};

/// Physical-space samples on a uniform periodic grid.
using GridBuffer = std::vector<Complex, AlignedAllocator<Complex>>;

/// True when n = 2^a 3^b with n >= 1.
bool is_smooth_size(long n);
/// Smallest 2^a 3^b that is >= n.
long next_smooth_size(long n);

/// In-place unnormalized DFTs. forward: X_k = sum_j x_j e^{-2 pi i jk/L};
/// backward uses e^{+2 pi i jk/L}. Plans are cached per length.
void fft_forward(std::span<Complex> data);
void fft_backward(std::span<Complex> data);

}  // namespace blowup
