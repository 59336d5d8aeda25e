#pragma once

#include "blowup/models.hpp"
#include "blowup/spectral_field.hpp"

namespace blowup {

enum class Scheme { rk4, ifrk4 };

struct IntegratorConfig {
  Scheme scheme = Scheme::rk4;
  double cfl_safety = 0.25;
  double dt_max = 1e-3;
  int check_every = 1;  ///< renormalization monitor cadence, in steps

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Advances the full system (weights a0) by dt. rk4 is classical
/// Runge-Kutta on the whole right-hand side; ifrk4 propagates the linear
/// part exactly (integrating factor) and applies RK4 to the rest.
/// Throws OverflowError if the result is not finite.
SpectralField step(const SpectralField& u, const ModelSpec& model, const Partition& partition, double dt,
                   Scheme scheme = Scheme::rk4);

/// CFL-style step: Burgers cfl * dx / max|u|, NLS cfl / (max|u|^{2 sigma} + 1),
/// capped by dt_max.
double choose_dt(const SpectralField& u, const ModelSpec& model, const IntegratorConfig& config);

}  // namespace blowup
