#include "blowup/models.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/fft.hpp"
#include "blowup/kernels.hpp"
#include "blowup/spectral.hpp"

namespace blowup {

ModelSpec ModelSpec::burgers() { return ModelSpec{}; }

ModelSpec ModelSpec::nls(double sigma) {
  ModelSpec m;
  m.kind = ModelKind::nls;
  m.sigma = sigma;
  return m;
}

std::string ModelSpec::name() const { return kind == ModelKind::burgers ? "burgers" : "nls"; }

Partition Partition::for_resolution(int n) {
  if (n < 4 || n % 4 != 0)
    throw ConfigError("resolution " + std::to_string(n) + " must be a positive multiple of 4");
  return {{-n / 4, n / 4 - 1}, ModeRange::symmetric(n), {-n, n - 1}};
}

LevelRanges level_ranges(const Partition& partition, Level level, bool conjugate_symmetric) {
  LevelRanges r = level == Level::reduced ? LevelRanges{partition.resolved, partition.full}
                                          : LevelRanges{partition.full, partition.augmented};
  if (conjugate_symmetric) r.resolved = r.resolved.paired();
  return r;
}

SpectralField memory_term(const SpectralField& u, double t, ModeRange resolved, ModeRange outer,
                          const GalerkinOp& rhs, const LinearizedOp& linearized) {
  const SpectralField w = zero_inside(rhs(u, resolved, outer), resolved);
  SpectralField out = linearized(u, resolved, w, outer, resolved);
  for (Complex& z : out.coeffs()) z *= t;
  return out;
}

// ---------------------------------------------------------------- Burgers

SpectralField burgers_nonlinear(const SpectralField& u, ModeRange in, ModeRange out) {
  SpectralField w = truncated_convolution(u, u, in, in, out);
  for (int k = out.lo; k <= out.hi; ++k) w[k] *= Complex(0.0, -0.5 * k);
  return w;
}

SpectralField burgers_galerkin(const SpectralField& u, ModeRange range) {
  return burgers_nonlinear(u, range, range);
}

SpectralField burgers_linearized(const SpectralField& u, ModeRange u_in, const SpectralField& w,
                                 ModeRange w_in, ModeRange out) {
  SpectralField c = truncated_convolution(u, w, u_in, w_in, out);
  for (int k = out.lo; k <= out.hi; ++k) c[k] *= Complex(0.0, -1.0 * k);
  return c;
}

SpectralField burgers_tmodel(const SpectralField& u, double t, ModeRange resolved, ModeRange outer) {
  // inner_q = -t (iq/2) sum_{r+s=q; r,s in R} u_r u_s, kept for q in outer \ R
  SpectralField inner = truncated_convolution(u, u, resolved, resolved, outer);
  for (int q = outer.lo; q <= outer.hi; ++q)
    inner[q] = resolved.contains(q) ? Complex{} : inner[q] * Complex(0.0, -0.5 * t * q);
  // The p in R, q in U and p in U, q in R sums are equal by symmetry.
  SpectralField term = truncated_convolution(u, inner, resolved, outer, resolved);
  for (int k = resolved.lo; k <= resolved.hi; ++k) term[k] *= Complex(0.0, -1.0 * k);
  return term;
}

SpectralField burgers_tmodel(const SpectralField& u, double t, const Partition& partition, Level level) {
  const LevelRanges r = level_ranges(partition, level, true);
  return burgers_tmodel(u, t, r.resolved, r.outer);
}

// -------------------------------------------------------------------- NLS

int checked_sigma(double sigma) {
  if (!(sigma > 0.0) || std::floor(sigma) != sigma || sigma > 64.0)
    throw ConfigError("NLS exponent sigma must be a positive integer (got " + std::to_string(sigma) +
                      "); exact dealiasing needs a polynomial nonlinearity");
  return static_cast<int>(sigma);
}

SpectralField nls_power(const SpectralField& u, double sigma, ModeRange in, ModeRange out) {
  const int s = checked_sigma(sigma);
  in = intersect(in, u.range());
  if (in.empty()) return SpectralField(out, u.time());
  // u^{s+1} conj(u)^s
  const long lo = static_cast<long>(s + 1) * in.lo - static_cast<long>(s) * in.hi;
  const long hi = static_cast<long>(s + 1) * in.hi - static_cast<long>(s) * in.lo;
  const long length = alias_free_length(lo, hi, out, in.size());
  GridBuffer grid = to_physical(u, in, length);
  kernels::active().power_nonlinearity(grid, s, grid);
  return from_physical(grid, out, {static_cast<int>(lo), static_cast<int>(hi)}, u.time());
}

SpectralField nls_galerkin(const SpectralField& u, double sigma, ModeRange in, ModeRange out) {
  SpectralField w = nls_power(u, sigma, in, out);
  const ModeRange lin = intersect(intersect(in, out), u.range());
  for (int k = out.lo; k <= out.hi; ++k) {
    w[k] *= Complex(0.0, 1.0);
    if (lin.contains(k)) w[k] += Complex(0.0, -1.0 * k * k) * u[k];
  }
  return w;
}

SpectralField nls_galerkin(const SpectralField& u, double sigma, ModeRange range) {
  return nls_galerkin(u, sigma, range, range);
}

SpectralField nls_linearized(const SpectralField& u, ModeRange u_in, const SpectralField& w,
                             ModeRange w_in, ModeRange out, double sigma) {
  const int s = checked_sigma(sigma);
  u_in = intersect(u_in, u.range());
  w_in = intersect(w_in, w.range());
  if (u_in.empty() || w_in.empty()) return SpectralField(out, u.time());
  // |u|^{2s} w:                u^s conj(u)^s w
  // |u|^{2s-2} u^2 conj(w):    u^{s+1} conj(u)^{s-1} conj(w)
  const long a = u_in.lo, b = u_in.hi;
  const long lo1 = s * a - s * b + w_in.lo, hi1 = s * b - s * a + w_in.hi;
  const long lo2 = (s + 1) * a - (s - 1) * b - w_in.hi, hi2 = (s + 1) * b - (s - 1) * a - w_in.lo;
  const long lo = std::min(lo1, lo2), hi = std::max(hi1, hi2);
  const long length = alias_free_length(lo, hi, out, std::max(u_in.size(), w_in.size()));
  GridBuffer gu = to_physical(u, u_in, length);
  const GridBuffer gw = to_physical(w, w_in, length);
  kernels::active().linearized_power(gu, gw, s, gu);
  SpectralField r = from_physical(gu, out, {static_cast<int>(lo), static_cast<int>(hi)}, u.time());
  for (Complex& z : r.coeffs()) z *= Complex(0.0, 1.0);
  return r;
}

SpectralField nls_tmodel(const SpectralField& u, double t, double sigma, ModeRange resolved,
                         ModeRange outer) {
  checked_sigma(sigma);
  // The dispersion term maps unresolved support to unresolved support, so
  // only the nonlinearity contributes to the derivative.
  return memory_term(
      u, t, resolved, outer,
      [sigma](const SpectralField& v, ModeRange in, ModeRange out) { return nls_galerkin(v, sigma, in, out); },
      [sigma](const SpectralField& v, ModeRange v_in, const SpectralField& w, ModeRange w_in, ModeRange out) {
        return nls_linearized(v, v_in, w, w_in, out, sigma);
      });
}

SpectralField nls_tmodel(const SpectralField& u, double t, double sigma, const Partition& partition,
                         Level level) {
  const LevelRanges r = level_ranges(partition, level, false);
  return nls_tmodel(u, t, sigma, r.resolved, r.outer);
}

// ------------------------------------------------------------ term lists

SpectralField evaluate_term(const ModelSpec& model, int term, const SpectralField& u, double t,
                            const Partition& partition, Level level) {
  const LevelRanges r = level_ranges(partition, level, model.conjugate_symmetric());
  const ModeRange container = level == Level::reduced ? partition.resolved : partition.full;
  SpectralField value;
  if (model.kind == ModelKind::burgers) {
    value = term == 0 ? burgers_galerkin(u, r.resolved) : burgers_tmodel(u, t, r.resolved, r.outer);
  } else {
    value = term == 0 ? nls_galerkin(u, model.sigma, r.resolved)
                      : nls_tmodel(u, t, model.sigma, r.resolved, r.outer);
  }
  SpectralField out = restrict_to(value, container);
  out.set_time(t);
  return out;
}

namespace {

SpectralField weighted_sum(const SpectralField& u, const ModelSpec& model, const Partition& partition,
                           double t, Level level, const std::array<double, ModelSpec::kTerms>& a) {
  const ModeRange container = level == Level::reduced ? partition.resolved : partition.full;
  SpectralField total(container, t);
  for (int i = 0; i < ModelSpec::kTerms; ++i) {
    if (a[i] == 0.0) continue;
    const SpectralField term = evaluate_term(model, i, u, t, partition, level);
    kernels::active().axpy(a[i], term.coeffs(), total.coeffs(), total.coeffs());
  }
  return total;
}

}  // namespace

SpectralField full_rhs(const SpectralField& u, const ModelSpec& model, const Partition& partition,
                       double t) {
  return weighted_sum(u, model, partition, t, Level::full, model.a0);
}

SpectralField reduced_rhs(const SpectralField& u, const ModelSpec& model, const Partition& partition,
                          double t) {
  return weighted_sum(restrict_to(u, partition.resolved), model, partition, t, Level::reduced, model.a1);
}

Complex linear_symbol(const ModelSpec& model, int k) {
  if (model.kind == ModelKind::burgers) return {};
  return Complex(0.0, -model.a0[0] * k * k);
}

SpectralField nonlinear_rhs(const SpectralField& u, const ModelSpec& model, const Partition& partition,
                            double t) {
  if (model.kind == ModelKind::burgers) return full_rhs(u, model, partition, t);
  const ModeRange full = partition.full;
  SpectralField total(full, t);
  if (model.a0[0] != 0.0) {
    SpectralField p = nls_power(u, model.sigma, full, full);
    for (int k = full.lo; k <= full.hi; ++k) total[k] = Complex(0.0, model.a0[0]) * p[k];
  }
  if (model.a0[1] != 0.0) {
    const SpectralField m = evaluate_term(model, 1, u, t, partition, Level::full);
    kernels::active().axpy(model.a0[1], m.coeffs(), total.coeffs(), total.coeffs());
  }
  return total;
}

}  // namespace blowup
