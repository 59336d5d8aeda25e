#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blowup/integrator.hpp"
#include "blowup/models.hpp"
#include "blowup/renorm.hpp"
#include "blowup/spectral.hpp"
#include "blowup/spectral_field.hpp"

namespace blowup {

inline constexpr double kDetBFloor = 1e-18;  ///< "det B became nonzero"
inline constexpr double kDetAFloor = 1e-16;  ///< "det A became nonzero"

enum class InitialKind { sine, gaussian_nls };

struct InitialCondition {
  InitialKind kind = InitialKind::sine;
  double amplitude = 1.0;  ///< max |u_0|
};

/// A sin(x), or i A exp(-(x - pi)^2) summed over periodic images.
SpectralField initial_field(const InitialCondition& ic, int n);

struct RunConfig {
  ModelSpec model = ModelSpec::burgers();
  InitialCondition initial;
  /// Resolutions visited in order; the last entry is N_final.
  std::vector<int> ladder{32, 64, 128, 256};
  double tol = 1e-10;
  IntegratorConfig integrator;
  double t_end = 1.0;
  double cond_max = kDefaultCondMax;

  /// ladder = n_start * factor^s up to n_final.
  static std::vector<int> geometric_ladder(int n_start, int n_final, int factor);

  int n_start() const { return ladder.front(); }
  int n_final() const { return ladder.back(); }
  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

struct RefinementEvent {
  int n = 0;           ///< refinement index, from 1
  double T = 0.0;      ///< trigger time
  int N = 0;           ///< full-system resolution at the trigger
  double l = 0.0;      ///< reduced-model length scale 2 (2 pi) / N
  double xi = 0.0;     ///< blow-up quantity
  Vector2 a1 = Vector2(1.0, 0.0);
  SolveStatus a1_status = SolveStatus::pre_transfer;
  double detB = 0.0;
  double detA = 0.0;
  double E1 = 0.0;
  double E2 = 0.0;
};

enum class Termination { resolution_exhausted, t_end_reached, overflow };
std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

struct RunOutcome {
  std::vector<RefinementEvent> events;
  double final_time = 0.0;
  Termination termination = Termination::t_end_reached;
  double wall_clock = 0.0;  ///< seconds
  std::optional<double> T_B_first;
  std::optional<double> T_A_first;
  SpectralField final_field;
  long steps = 0;
};

/// Called after every accepted step with the current state.
using StepObserver = std::function<void(const SpectralField& u)>;

/// max |u_x| for Burgers, max |u| for NLS, on a 4x oversampled grid.
double blowup_quantity(const SpectralField& u, const ModelSpec& model);

/// Integrates the full system, refining along the ladder whenever
/// |det B| >= tol. Stops when the last rung trips, at t_end, or on overflow.
RunOutcome run_adaptive(const RunConfig& config, const StepObserver& observer = {});

/// run_adaptive with the ladder collapsed to its final rung.
RunOutcome run_fixed(const RunConfig& config, const StepObserver& observer = {});

/// Advances u with the configured integrator until time `target`.
SpectralField advance_to(SpectralField u, double target, const RunConfig& config);

inline constexpr int kPrecisionDigits = 15;

/// floor(-log10(max relative difference)), clamped to [0, kPrecisionDigits].
int matching_digits(const Vector2& value, const Vector2& reference);
int matching_digits(double value, double reference);

struct TwinComparison {
  RunOutcome adaptive;
  RunOutcome fixed;
  double common_time = 0.0;
  SpectralField adaptive_field;  ///< both fields at common_time
  SpectralField fixed_field;
  Moments adaptive_moments;
  Moments fixed_moments;
  int digits = 0;
  double field_max_diff = 0.0;
};

/// Runs the adaptive and fixed-resolution twins and brings both final
/// fields to the later of the two termination times.
TwinComparison compare_runs(const RunConfig& config);

struct CalibrationRow {
  double tol = 0.0;
  int digits = 0;
  double time = 0.0;
  Moments adaptive;
  Moments fixed;
};

struct CalibrationResult {
  std::vector<CalibrationRow> table;
  std::optional<double> selected_tol;  ///< empty when no entry agreed
};

/// First TOL in `schedule` (decreasing) whose adaptive and fixed runs agree
/// on the resolved moments to at least `target_digits` digits.
CalibrationResult calibrate_tol(const RunConfig& config, int target_digits, const std::vector<double>& schedule);

}  // namespace blowup
