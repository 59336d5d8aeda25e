#pragma once

#include <array>
#include <functional>
#include <string>

#include "blowup/mode_range.hpp"
#include "blowup/spectral_field.hpp"

namespace blowup {

enum class ModelKind { burgers, nls };

/// A PDE written as a coefficient-weighted list of m = 2 terms: the
/// Galerkin term and the t-model memory term. a0 weights the full system,
/// a1 the reduced model.
struct ModelSpec {
  static constexpr int kTerms = 2;

  ModelKind kind = ModelKind::burgers;
  double sigma = 3.0;  ///< NLS nonlinearity exponent; ignored for Burgers
  std::array<double, kTerms> a0{1.0, 0.0};
  std::array<double, kTerms> a1{1.0, 1.0};

  static ModelSpec burgers();
  static ModelSpec nls(double sigma);

  std::string name() const;
  /// Real-valued physical fields (u_{-k} = conj(u_k)).
  bool conjugate_symmetric() const { return kind == ModelKind::burgers; }
};

/// Mode sets for a full system of n modes: F (resolved by the reduced
/// model, half the resolution), F u G (the full system), and F u G u I where
/// I is the next octave used to give the full system's memory term the same
/// functional form as the reduced one.
struct Partition {
  ModeRange resolved;
  ModeRange full;
  ModeRange augmented;

  /// n must be a positive multiple of 4.
  static Partition for_resolution(int n);
  int n() const { return full.size(); }
};

enum class Level { reduced, full };

/// The resolved range of a level and the outer range; the unresolved modes
/// are outer \ resolved.
struct LevelRanges {
  ModeRange resolved;
  ModeRange outer;
};

/// For conjugate-symmetric models the unpaired lowest mode of the resolved
/// range is excluded.
LevelRanges level_ranges(const Partition& partition, Level level, bool conjugate_symmetric);

/// Right-hand side of a Galerkin system whose inputs are restricted to `in`,
/// evaluated on `out`.
using GalerkinOp = std::function<SpectralField(const SpectralField& u, ModeRange in, ModeRange out)>;
/// Derivative of the nonlinearity at u (restricted to u_in) applied to w
/// (restricted to w_in), evaluated on `out`.
using LinearizedOp = std::function<SpectralField(const SpectralField& u, ModeRange u_in,
                                                 const SpectralField& w, ModeRange w_in,
                                                 ModeRange out)>;

/// First-order memory term t * P_R[ N'(u_R) [ P_U N(u_R) ] ] with U = outer \ R.
SpectralField memory_term(const SpectralField& u, double t, ModeRange resolved, ModeRange outer,
                          const GalerkinOp& rhs, const LinearizedOp& linearized);

// Inviscid Burgers, u_t + u u_x = 0.

/// -(ik/2) sum_{p+q=k; p,q in range} u_p u_q on `range`.
SpectralField burgers_galerkin(const SpectralField& u, ModeRange range);
SpectralField burgers_nonlinear(const SpectralField& u, ModeRange in, ModeRange out);
/// -ik (u * w)_k, the derivative of the Burgers nonlinearity.
SpectralField burgers_linearized(const SpectralField& u, ModeRange u_in, const SpectralField& w,
                                 ModeRange w_in, ModeRange out);
/// The t-model term with resolved range `resolved` and unresolved modes
/// outer \ resolved, evaluated on `resolved`.
SpectralField burgers_tmodel(const SpectralField& u, double t, ModeRange resolved, ModeRange outer);
SpectralField burgers_tmodel(const SpectralField& u, double t, const Partition& partition, Level level);

// Focusing NLS, i u_t + u_xx + |u|^{2 sigma} u = 0.

/// sigma as a positive integer; throws ConfigError otherwise.
int checked_sigma(double sigma);
/// [|u|^{2 sigma} u]_k for k in out, inputs restricted to `in`.
SpectralField nls_power(const SpectralField& u, double sigma, ModeRange in, ModeRange out);
/// -i k^2 u_k + i [|u|^{2 sigma} u]_k on `range`.
SpectralField nls_galerkin(const SpectralField& u, double sigma, ModeRange range);
SpectralField nls_galerkin(const SpectralField& u, double sigma, ModeRange in, ModeRange out);
/// i((sigma+1)|u|^{2 sigma} w + sigma |u|^{2 sigma - 2} u^2 conj(w)) on `out`.
SpectralField nls_linearized(const SpectralField& u, ModeRange u_in, const SpectralField& w,
                             ModeRange w_in, ModeRange out, double sigma);
SpectralField nls_tmodel(const SpectralField& u, double t, double sigma, ModeRange resolved,
                         ModeRange outer);
SpectralField nls_tmodel(const SpectralField& u, double t, double sigma, const Partition& partition,
                         Level level);

/// Term `term` (0: Galerkin, 1: t-model) at `level`, on the level's
/// container range (F for reduced, F u G for full).
SpectralField evaluate_term(const ModelSpec& model, int term, const SpectralField& u, double t,
                            const Partition& partition, Level level);

/// sum_i a0_i R^(0)_i on F u G.
SpectralField full_rhs(const SpectralField& u, const ModelSpec& model, const Partition& partition,
                       double t);
/// sum_i a1_i R^(1)_i(u restricted to F) on F.
SpectralField reduced_rhs(const SpectralField& u, const ModelSpec& model, const Partition& partition,
                          double t);

/// Stiff linear part of the full system: du_k/dt = L_k u_k + N_k(u).
/// -i a0_1 k^2 for NLS, zero for Burgers.
Complex linear_symbol(const ModelSpec& model, int k);
/// full_rhs minus the linear part.
SpectralField nonlinear_rhs(const SpectralField& u, const ModelSpec& model, const Partition& partition,
                            double t);

}  // namespace blowup
