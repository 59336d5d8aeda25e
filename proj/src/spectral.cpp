#include "blowup/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blowup/errors.hpp"
#include "blowup/kernels.hpp"

namespace blowup {
namespace {

long wrap(long k, long length) {
  long r = k % length;
  return r < 0 ? r + length : r;
}

}  // namespace

long alias_free_length(long sum_lo, long sum_hi, ModeRange out, long min_length) {
  long need = std::max(min_length, 1L);
  if (!out.empty() && sum_hi >= sum_lo) {
    need = std::max(need, sum_hi - out.lo + 1);
    need = std::max(need, out.hi - sum_lo + 1);
  }
  need = std::max<long>(need, out.size());
  return next_smooth_size(need);
}

GridBuffer to_physical(const SpectralField& u, ModeRange support, long length) {
  GridBuffer grid(static_cast<std::size_t>(length));
  const ModeRange r = intersect(support, u.range());
  for (int k = r.lo; k <= r.hi; ++k) grid[static_cast<std::size_t>(wrap(k, length))] = u[k];
  fft_backward(grid);
  return grid;
}

SpectralField from_physical(GridBuffer& grid, ModeRange out, ModeRange reachable, double time) {
  const long length = static_cast<long>(grid.size());
  fft_forward(grid);
  SpectralField w(out, time);
  const double scale = 1.0 / static_cast<double>(length);
  const ModeRange r = intersect(out, reachable);
  for (int k = r.lo; k <= r.hi; ++k) w[k] = grid[static_cast<std::size_t>(wrap(k, length))] * scale;
  return w;
}

SpectralField truncated_convolution(const SpectralField& u, const SpectralField& v, ModeRange P,
                                    ModeRange Q, ModeRange out) {
  P = intersect(P, u.range());
  Q = intersect(Q, v.range());
  if (P.empty() || Q.empty()) return SpectralField(out, u.time());
  const long sum_lo = static_cast<long>(P.lo) + Q.lo;
  const long sum_hi = static_cast<long>(P.hi) + Q.hi;
  const long length = alias_free_length(sum_lo, sum_hi, out, std::max(P.size(), Q.size()));
  GridBuffer gu = to_physical(u, P, length);
  const GridBuffer gv = to_physical(v, Q, length);
  kernels::active().multiply(gu, gv, gu);
  return from_physical(gu, out, {static_cast<int>(sum_lo), static_cast<int>(sum_hi)}, u.time());
}

SpectralField spectral_derivative(const SpectralField& u) {
  SpectralField d(u.range(), u.time());
  for (int k = u.range().lo; k <= u.range().hi; ++k) d[k] = Complex(0.0, k) * u[k];
  return d;
}

Moments moments(const SpectralField& u, ModeRange range) {
  const ModeRange r = intersect(range, u.range());
  if (r.empty()) return {};
  const auto span = u.coeffs().subspan(static_cast<std::size_t>(r.lo - u.range().lo),
                                       static_cast<std::size_t>(r.size()));
  const kernels::Pair p = kernels::active().moments(span);
  return {p.first, p.second};
}

SpectralField restrict_to(const SpectralField& u, ModeRange range) {
  SpectralField w(range, u.time());
  const ModeRange r = intersect(range, u.range());
  for (int k = r.lo; k <= r.hi; ++k) w[k] = u[k];
  return w;
}

SpectralField zero_inside(SpectralField u, ModeRange hole) {
  const ModeRange r = intersect(hole, u.range());
  for (int k = r.lo; k <= r.hi; ++k) u[k] = Complex{};
  return u;
}

SpectralField refine_pad(const SpectralField& u, int n_new) {
  if (n_new <= u.size())
    throw ConfigError("refine_pad: new resolution " + std::to_string(n_new) +
                      " must exceed current resolution " + std::to_string(u.size()));
  if (!is_smooth_size(n_new) || n_new % 2 != 0)
    throw ConfigError("refine_pad: resolution " + std::to_string(n_new) +
                      " is not an even number of the form 2^a 3^b");
  return restrict_to(u, ModeRange::symmetric(n_new));
}

double max_abs_physical(const SpectralField& u, int oversample) {
  if (oversample < 1) throw ConfigError("max_abs_physical: oversample must be >= 1");
  const long length = static_cast<long>(oversample) * std::max(u.size(), 1);
  const GridBuffer grid = to_physical(u, u.range(), length);
  return kernels::active().max_abs(grid);
}

void enforce_conjugate_symmetry(SpectralField& u) {
  const ModeRange r = u.range();
  for (int k = r.lo; k <= r.hi; ++k)
    if (!r.contains(-k)) u[k] = Complex{};
  for (int k = 1; k <= std::min(r.hi, -r.lo); ++k) {
    const Complex avg = 0.5 * (u[k] + std::conj(u[-k]));
    u[k] = avg;
    u[-k] = std::conj(avg);
  }
  if (r.contains(0)) u[0] = u[0].real();
}

double conjugate_symmetry_defect(const SpectralField& u) {
  const ModeRange r = u.range();
  double defect = 0.0, scale = 0.0;
  for (int k = r.lo; k <= r.hi; ++k) {
    scale = std::max(scale, std::abs(u[k]));
    if (r.contains(-k)) defect = std::max(defect, std::abs(u[k] - std::conj(u[-k])));
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

bool all_finite(const SpectralField& u) {
  for (const Complex& z : u.coeffs())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace blowup
