#include "blowup/integrator.hpp"

#include <cmath>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/kernels.hpp"
#include "blowup/spectral.hpp"

namespace blowup {

void IntegratorConfig::validate() const {
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ConfigError("integrator.cfl_safety must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw ConfigError("integrator.dt_max must be positive");
  if (check_every < 1) throw ConfigError("integrator.check_every must be >= 1");
}

namespace {

SpectralField combine(const SpectralField& y, double h, const SpectralField& x) {
  SpectralField out(y.range(), y.time());
  kernels::active().axpy(h, x.coeffs(), y.coeffs(), out.coeffs());
  return out;
}

SpectralField rk4(const SpectralField& u, const ModelSpec& model, const Partition& partition, double dt) {
  const double t = u.time();
  const auto f = [&](const SpectralField& v, double tv) { return full_rhs(v, model, partition, tv); };
  const SpectralField k1 = f(u, t);
  const SpectralField k2 = f(combine(u, 0.5 * dt, k1), t + 0.5 * dt);
  const SpectralField k3 = f(combine(u, 0.5 * dt, k2), t + 0.5 * dt);
  const SpectralField k4 = f(combine(u, dt, k3), t + dt);
  SpectralField next = combine(u, dt / 6.0, k1);
  const auto& k = kernels::active();
  k.axpy(dt / 3.0, k2.coeffs(), next.coeffs(), next.coeffs());
  k.axpy(dt / 3.0, k3.coeffs(), next.coeffs(), next.coeffs());
  k.axpy(dt / 6.0, k4.coeffs(), next.coeffs(), next.coeffs());
  return next;
}

// Lawson (integrating-factor) RK4 for du/dt = L u + N(u, t), diagonal L.
SpectralField ifrk4(const SpectralField& u, const ModelSpec& model, const Partition& partition, double dt) {
  const ModeRange r = u.range();
  const double t = u.time();
  std::vector<Complex> half(static_cast<std::size_t>(r.size())), full(half.size());
  for (int k = r.lo; k <= r.hi; ++k) {
    const Complex l = linear_symbol(model, k);
    half[static_cast<std::size_t>(k - r.lo)] = std::exp(0.5 * dt * l);
    full[static_cast<std::size_t>(k - r.lo)] = std::exp(dt * l);
  }
  const auto propagate = [&](const SpectralField& v, const std::vector<Complex>& e) {
    SpectralField out(v.range(), v.time());
    kernels::active().multiply(v.coeffs(), e, out.coeffs());
    return out;
  };
  const auto f = [&](const SpectralField& v, double tv) { return nonlinear_rhs(v, model, partition, tv); };

  const SpectralField u_half = propagate(u, half);
  const SpectralField k1 = f(u, t);
  const SpectralField k2 = f(propagate(combine(u, 0.5 * dt, k1), half), t + 0.5 * dt);
  const SpectralField k3 = f(combine(u_half, 0.5 * dt, k2), t + 0.5 * dt);
  const SpectralField k3_half = propagate(k3, half);
  const SpectralField k4 = f(combine(propagate(u, full), dt, k3_half), t + dt);

  // E(h) u + h/6 (E(h) k1 + 2 E(h/2)(k2 + k3) + k4)
  SpectralField mid = combine(k2, 1.0, k3);
  mid = propagate(mid, half);
  SpectralField next = combine(u, dt / 6.0, k1);
  next = propagate(next, full);
  const auto& k = kernels::active();
  k.axpy(dt / 3.0, mid.coeffs(), next.coeffs(), next.coeffs());
  k.axpy(dt / 6.0, k4.coeffs(), next.coeffs(), next.coeffs());
  return next;
}

}  // namespace

SpectralField step(const SpectralField& u, const ModelSpec& model, const Partition& partition, double dt,
                   Scheme scheme) {
  if (dt == 0.0) return u;
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  SpectralField next = scheme == Scheme::ifrk4 ? ifrk4(u, model, partition, dt) : rk4(u, model, partition, dt);
  next.set_time(u.time() + dt);
  if (model.conjugate_symmetric()) enforce_conjugate_symmetry(next);
  if (!all_finite(next))
    throw OverflowError("non-finite coefficients after step to t = " + std::to_string(next.time()));
  return next;
}

double choose_dt(const SpectralField& u, const ModelSpec& model, const IntegratorConfig& config) {
  const double umax = max_abs_physical(u, 1);
  if (!std::isfinite(umax)) throw OverflowError("max |u| is not representable");
  if (!(umax > 0.0)) return config.dt_max;
  double dt;
  if (model.kind == ModelKind::burgers) {
    const double dx = kDomainLength / u.size();
    dt = config.cfl_safety * dx / umax;
  } else {
    dt = config.cfl_safety / (std::pow(umax, 2.0 * model.sigma) + 1.0);
    if (config.scheme == Scheme::rk4) {
      // explicit dispersion: keep dt * k_max^2 below the RK4 stability bound
      const double kmax = 0.5 * u.size();
      dt = std::min(dt, config.cfl_safety * 2.0 / (kmax * kmax));
    }
  }
  return std::min(dt, config.dt_max);
}

}  // namespace blowup
