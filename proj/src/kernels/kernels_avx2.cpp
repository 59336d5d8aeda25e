#if defined(BLOWUP_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace blowup::kernels::detail {
namespace {

// Two complex<double> per register: [re0, im0, re1, im1].

inline __m256d load(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// |z|^2 broadcast to both lanes of each complex.
inline __m256d norm2_dup(__m256d z) {
  const __m256d sq = _mm256_mul_pd(z, z);
  return _mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5));
}

inline __m256d int_pow(__m256d x, int n) {
  __m256d r = _mm256_set1_pd(1.0);
  for (int i = 0; i < n; ++i) r = _mm256_mul_pd(r, x);
  return r;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void multiply(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store(&out[i], cmul(load(&a[i]), load(&b[i])));
  if (i < n) kScalarTable.multiply(a.subspan(i), b.subspan(i), out.subspan(i));
}

void power_nonlinearity(std::span<const Complex> u, int sigma, std::span<Complex> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d z = load(&u[i]);
    store(&out[i], _mm256_mul_pd(int_pow(norm2_dup(z), sigma), z));
  }
  if (i < n) kScalarTable.power_nonlinearity(u.subspan(i), sigma, out.subspan(i));
}

void linearized_power(std::span<const Complex> u, std::span<const Complex> w, int sigma,
                      std::span<Complex> out) {
  const std::size_t n = out.size();
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  const __m256d s1 = _mm256_set1_pd(sigma + 1.0);
  const __m256d s0 = _mm256_set1_pd(static_cast<double>(sigma));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d z = load(&u[i]);
    const __m256d x = load(&w[i]);
    const __m256d m = norm2_dup(z);
    const __m256d pm1 = int_pow(m, sigma - 1);
    const __m256d c1 = _mm256_mul_pd(s1, _mm256_mul_pd(pm1, m));
    const __m256d c2 = _mm256_mul_pd(s0, pm1);
    const __m256d t = cmul(cmul(z, z), _mm256_xor_pd(x, conj_mask));
    store(&out[i], _mm256_fmadd_pd(c1, x, _mm256_mul_pd(c2, t)));
  }
  if (i < n) kScalarTable.linearized_power(u.subspan(i), w.subspan(i), sigma, out.subspan(i));
}

Pair rate_pair(std::span<const Complex> r, std::span<const Complex> u) {
  const std::size_t n = u.size();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d z = load(&u[i]);
    const __m256d t = _mm256_mul_pd(load(&r[i]), z);  // lanes sum pairwise to Re(r conj u)
    acc1 = _mm256_add_pd(acc1, t);
    acc2 = _mm256_fmadd_pd(t, norm2_dup(z), acc2);
  }
  Pair out{2.0 * hsum(acc1), 4.0 * hsum(acc2)};
  if (i < n) {
    const Pair tail = kScalarTable.rate_pair(r.subspan(i), u.subspan(i));
    out.first += tail.first;
    out.second += tail.second;
  }
  return out;
}

Pair moments(std::span<const Complex> u) {
  const std::size_t n = u.size();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d z = load(&u[i]);
    const __m256d sq = _mm256_mul_pd(z, z);
    acc1 = _mm256_add_pd(acc1, sq);
    acc2 = _mm256_fmadd_pd(sq, norm2_dup(z), acc2);
  }
  Pair out{hsum(acc1), hsum(acc2)};
  if (i < n) {
    const Pair tail = kScalarTable.moments(u.subspan(i));
    out.first += tail.first;
    out.second += tail.second;
  }
  return out;
}

double max_abs(std::span<const Complex> u) {
  const std::size_t n = u.size();
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) best = _mm256_max_pd(best, norm2_dup(load(&u[i])));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::sqrt(std::max({lanes[0], lanes[1], lanes[2], lanes[3]}));
  if (i < n) m = std::max(m, kScalarTable.max_abs(u.subspan(i)));
  return m;
}

void axpy(double h, std::span<const Complex> x, std::span<const Complex> y, std::span<Complex> out) {
  const std::size_t n = out.size();
  const __m256d hv = _mm256_set1_pd(h);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store(&out[i], _mm256_fmadd_pd(hv, load(&x[i]), load(&y[i])));
  if (i < n) kScalarTable.axpy(h, x.subspan(i), y.subspan(i), out.subspan(i));
}

}  // namespace

const KernelTable kAvx2Table{
    "avx2", multiply, power_nonlinearity, linearized_power, rate_pair, moments, max_abs, axpy,
};

}  // namespace blowup::kernels::detail

#endif  // BLOWUP_HAVE_AVX2
