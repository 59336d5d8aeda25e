#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "blowup/driver.hpp"

namespace blowup {

/// Least-squares line through (log x, log y).
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;  ///< Pearson correlation; 0 when degenerate
  int n_points = 0;
  double slope_stderr = 0.0;
  bool degenerate = false;  ///< y constant, r undefined
};

/// Throws DomainError for non-positive values, mismatched lengths, fewer
/// than 3 points, or constant x.
ScalingFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

struct TcWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct TcEstimate {
  double tc = 0.0;
  double r = 0.0;           ///< correlation of the fit at tc
  bool at_boundary = false;  ///< optimum on the edge of the search window
};

inline constexpr int kTcGridPoints = 400;

/// T_c maximizing the straightness (r^2) of log xi_n against
/// log(T_c - T_n). The window defaults to (last T_n, last T_n + 0.5); the
/// scan is geometric in T_c - last T_n, then refined by golden section.
TcEstimate estimate_Tc(std::span<const RefinementEvent> events, std::optional<TcWindow> window = {},
                       int grid_points = kTcGridPoints, double tolerance = 1e-8);

/// Slope of log xi_n against log(1/(T_c - T_n)): the blow-up exponent.
ScalingFit direct_gamma(std::span<const RefinementEvent> events, double tc);

/// The refinement log read backwards: a coarse-graining flow moving away
/// from the singularity. Relabels n = 1, 2, ...
std::vector<RefinementEvent> renorm_flow(std::span<const RefinementEvent> events);

enum class FixedPointClass { unstable, stable, marginal };
const char* to_string(FixedPointClass c);

struct ExponentReport {
  double tc_hat = 0.0;
  double tc_r = 0.0;
  bool tc_at_boundary = false;
  double gamma_direct = 0.0;
  double beta1 = 0.0;  ///< alpha_n ~ l_n^{beta1}
  double beta2 = 0.0;  ///< xi_n ~ l_n^{-beta2}
  double delta = 0.0;  ///< alpha_n ~ (T_c - T_n)^{delta}
  double gamma_scaling = 0.0;  ///< delta beta2 / beta1
  bool fixed_point_stable = false;
  FixedPointClass classification = FixedPointClass::marginal;
  int excluded = 0;  ///< events dropped for alpha_n <= 0
  bool scaling_available = true;  ///< false when too few alpha_n > 0 survive
  ScalingFit direct_fit;
  ScalingFit xi_scale_fit;
  ScalingFit alpha_scale_fit;
  ScalingFit alpha_time_fit;
};

/// beta1, beta2, delta and gamma' = delta beta2 / beta1 with alpha_n the
/// memory-term coefficient a1_2. Also fills the direct fit at tc.
ExponentReport scaling_gamma(std::span<const RefinementEvent> events, double tc);

/// The same exponent obtained by running the flow away from the fixed
/// point (reversed log) and eliminating the step count.
double phase_transition_gamma(std::span<const RefinementEvent> events, double tc);

struct BetaFunction {
  double beta1 = 0.0;
  FixedPointClass classification = FixedPointClass::marginal;
};

/// beta(alpha) = beta1 alpha; the fixed point alpha = 0 is unstable for
/// beta1 > 0, stable for beta1 < 0, marginal within three standard errors.
BetaFunction beta_function(std::span<const RefinementEvent> events);

/// estimate_Tc followed by scaling_gamma.
ExponentReport analyze_exponents(std::span<const RefinementEvent> events, std::optional<TcWindow> window = {});

}  // namespace blowup
