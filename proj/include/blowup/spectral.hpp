#pragma once

#include "blowup/fft.hpp"
#include "blowup/mode_range.hpp"
#include "blowup/spectral_field.hpp"

namespace blowup {

struct Moments {
  double e1 = 0.0;  ///< sum over the range of |u_k|^2
  double e2 = 0.0;  ///< sum over the range of |u_k|^4
};

/// Smallest 2^a 3^b grid length on which every product index s in
/// [sum_lo, sum_hi] lands on a residue distinct from each k in `out` (except
/// s == k), i.e. the truncated product onto `out` is alias-free. At least
/// `min_length`.
long alias_free_length(long sum_lo, long sum_hi, ModeRange out, long min_length = 1);

/// Samples sum_{k in support} u_k e^{ikx_j} on x_j = 2 pi j / length.
GridBuffer to_physical(const SpectralField& u, ModeRange support, long length);

/// Inverse of to_physical restricted to `out`. Coefficients outside
/// `reachable` are set to exactly zero. The buffer is transformed in place.
SpectralField from_physical(GridBuffer& grid, ModeRange out, ModeRange reachable, double time);

/// w_k = sum_{p+q=k, p in P, q in Q} u_p v_q for k in out, without aliasing.
SpectralField truncated_convolution(const SpectralField& u, const SpectralField& v, ModeRange P,
                                    ModeRange Q, ModeRange out);

/// Coefficients i k u_k.
SpectralField spectral_derivative(const SpectralField& u);

Moments moments(const SpectralField& u, ModeRange range);

/// Copy of u on `range`; modes of `range` outside u's range are zero.
SpectralField restrict_to(const SpectralField& u, ModeRange range);

/// u with all coefficients inside `hole` set to zero.
SpectralField zero_inside(SpectralField u, ModeRange hole);

/// Zero-pads u from its symmetric range to [-n_new/2, n_new/2 - 1].
/// Throws ConfigError unless n_new > current size and n_new = 2^a 3^b.
SpectralField refine_pad(const SpectralField& u, int n_new);

/// max_j |u(x_j)| over exactly oversample * size(u) equispaced points.
double max_abs_physical(const SpectralField& u, int oversample = 4);

/// Sets u_{-k} = conj(u_k) by averaging each pair; the unpaired lowest mode
/// of a [-K, K-1] range is zeroed and u_0 made real.
void enforce_conjugate_symmetry(SpectralField& u);

/// max_k |u_k - conj(u_{-k})| / max_k |u_k| over paired modes.
double conjugate_symmetry_defect(const SpectralField& u);

bool all_finite(const SpectralField& u);

}  // namespace blowup
