#include "blowup/driver.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "blowup/errors.hpp"
#include "blowup/fft.hpp"
#include "blowup/spectral.hpp"

namespace blowup {

SpectralField initial_field(const InitialCondition& ic, int n) {
  SpectralField u(ModeRange::symmetric(n), 0.0);
  const ModeRange r = u.range();
  if (ic.kind == InitialKind::sine) {
    if (r.contains(-1) && r.contains(1)) {
      u[1] = Complex(0.0, -0.5 * ic.amplitude);
      u[-1] = Complex(0.0, 0.5 * ic.amplitude);
    }
    return u;
  }
  // Fourier series of the periodized Gaussian i A sum_m exp(-(x - pi - 2 pi m)^2):
  // u_k = i A (-1)^k exp(-k^2/4) / (2 sqrt(pi)).
  const double norm = ic.amplitude / (2.0 * std::sqrt(std::numbers::pi));
  for (int k = r.lo; k <= r.hi; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    u[k] = Complex(0.0, sign * norm * std::exp(-0.25 * k * k));
  }
  return u;
}

std::vector<int> RunConfig::geometric_ladder(int n_start, int n_final, int factor) {
  if (factor < 2) throw ConfigError("resolution.refine_factor must be >= 2");
  if (n_start < 1 || n_final < n_start) throw ConfigError("resolution.n_final must be >= resolution.n_start");
  std::vector<int> ladder{n_start};
  long n = n_start;
  while (n < n_final) {
    n *= factor;
    ladder.push_back(static_cast<int>(n));
  }
  if (n != n_final)
    throw ConfigError("resolution.n_final = " + std::to_string(n_final) + " is not n_start * refine_factor^s");
  return ladder;
}

void RunConfig::validate() const {
  if (ladder.empty()) throw ConfigError("resolution.ladder: empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const int n = ladder[i];
    if (!is_smooth_size(n) || n % 4 != 0)
      throw ConfigError("resolution.ladder: resolution " + std::to_string(n) +
                        " must be a multiple of 4 of the form 2^a 3^b");
    if (i > 0 && n <= ladder[i - 1]) throw ConfigError("resolution.ladder: must be strictly increasing");
  }
  if (!(tol > 0.0)) throw ConfigError("criterion.tol must be positive");
  if (!(t_end > 0.0)) throw ConfigError("run.t_end must be positive");
  if (!(cond_max >= 1.0)) throw ConfigError("criterion.cond_max must be >= 1");
  integrator.validate();
  if (model.kind == ModelKind::nls) checked_sigma(model.sigma);
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::resolution_exhausted: return "resolution_exhausted";
    case Termination::t_end_reached: return "t_end_reached";
    case Termination::overflow: return "overflow";
  }
  return "unknown";
}

Termination termination_from_string(const std::string& s) {
  if (s == "resolution_exhausted") return Termination::resolution_exhausted;
  if (s == "t_end_reached") return Termination::t_end_reached;
  if (s == "overflow") return Termination::overflow;
  throw ConfigError("unknown termination '" + s + "'");
}

double blowup_quantity(const SpectralField& u, const ModelSpec& model) {
  if (model.kind == ModelKind::burgers) return max_abs_physical(spectral_derivative(u));
  return max_abs_physical(u);
}

namespace {

bool reached(double t, double target) { return t >= target - 1e-14 * std::max(1.0, std::abs(target)); }

}  // namespace

RunOutcome run_adaptive(const RunConfig& config, const StepObserver& observer) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const ModelSpec& model = config.model;
  const Vector2 a0(model.a0[0], model.a0[1]);

  RunOutcome out;
  std::size_t rung = 0;
  int n = config.ladder[rung];
  SpectralField u = initial_field(config.initial, n);
  Partition partition = Partition::for_resolution(n);

  while (true) {
    if (reached(u.time(), config.t_end)) {
      out.termination = Termination::t_end_reached;
      break;
    }
    try {
      const double dt = std::min(choose_dt(u, model, config.integrator), config.t_end - u.time());
      // a step too small to move the clock means the field has outgrown double range
      if (!(u.time() + dt > u.time())) throw OverflowError("time step underflow");
      u = step(u, model, partition, dt, config.integrator.scheme);
    } catch (const OverflowError&) {
      out.termination = Termination::overflow;
      break;
    }
    ++out.steps;
    if (observer) observer(u);
    if (out.steps % config.integrator.check_every != 0) continue;

    const double t = u.time();
    const Matrix2 B = compute_B(u, t, model, partition);
    const double detB = B.determinant();
    if (!out.T_B_first && std::abs(detB) > kDetBFloor) out.T_B_first = t;
    const bool trigger = std::abs(detB) >= config.tol;
    // A is only needed until its onset is found, and at triggers.
    if (out.T_A_first && !trigger) continue;
    const Matrix2 A = compute_A(u, t, model, partition);
    const double detA = A.determinant();
    if (!out.T_A_first && std::abs(detA) > kDetAFloor) out.T_A_first = t;
    if (!trigger) continue;

    RefinementEvent ev;
    ev.n = static_cast<int>(out.events.size()) + 1;
    ev.T = t;
    ev.N = n;
    ev.l = 2.0 * kDomainLength / n;
    ev.xi = blowup_quantity(u, model);
    const CoefficientSolve solve = solve_coefficients(B, A * a0, config.cond_max);
    ev.a1 = solve.a1;
    ev.a1_status = solve.status;
    ev.detB = detB;
    ev.detA = detA;
    const Moments m = moments(u, moment_range(model, partition));
    ev.E1 = m.e1;
    ev.E2 = m.e2;
    out.events.push_back(ev);

    if (rung + 1 == config.ladder.size()) {
      out.termination = Termination::resolution_exhausted;
      break;
    }
    n = config.ladder[++rung];
    u = refine_pad(u, n);
    partition = Partition::for_resolution(n);
  }

  out.final_time = u.time();
  out.final_field = std::move(u);
  out.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

RunOutcome run_fixed(const RunConfig& config, const StepObserver& observer) {
  RunConfig fixed = config;
  fixed.ladder = {config.n_final()};
  return run_adaptive(fixed, observer);
}

SpectralField advance_to(SpectralField u, double target, const RunConfig& config) {
  const Partition partition = Partition::for_resolution(u.size());
  while (!reached(u.time(), target)) {
    const double dt = std::min(choose_dt(u, config.model, config.integrator), target - u.time());
    if (!(u.time() + dt > u.time())) throw OverflowError("time step underflow");
    u = step(u, config.model, partition, dt, config.integrator.scheme);
  }
  return u;
}

int matching_digits(const Vector2& value, const Vector2& reference) {
  double rel = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double diff = std::abs(value(i) - reference(i));
    const double scale = std::abs(reference(i));
    rel = std::max(rel, scale > 0.0 ? diff / scale : diff);
  }
  if (rel == 0.0) return kPrecisionDigits;
  const double d = std::floor(-std::log10(rel));
  return static_cast<int>(std::clamp(d, 0.0, static_cast<double>(kPrecisionDigits)));
}

int matching_digits(double value, double reference) { return matching_digits(Vector2(value, 0.0), Vector2(reference, 0.0)); }

TwinComparison compare_runs(const RunConfig& config) {
  TwinComparison c;
  c.adaptive = run_adaptive(config);
  c.fixed = run_fixed(config);
  const int n = config.n_final();
  SpectralField a = c.adaptive.final_field.size() < n ? refine_pad(c.adaptive.final_field, n)
                                                       : c.adaptive.final_field;
  SpectralField f = c.fixed.final_field;
  c.common_time = std::max(a.time(), f.time());
  a = advance_to(std::move(a), c.common_time, config);
  f = advance_to(std::move(f), c.common_time, config);
  const ModeRange range = moment_range(config.model, Partition::for_resolution(n));
  c.adaptive_moments = moments(a, range);
  c.fixed_moments = moments(f, range);
  c.digits = matching_digits({c.adaptive_moments.e1, c.adaptive_moments.e2},
                             {c.fixed_moments.e1, c.fixed_moments.e2});
  SpectralField diff = a;
  for (int k = diff.range().lo; k <= diff.range().hi; ++k) diff[k] -= f[k];
  c.field_max_diff = max_abs_physical(diff);
  c.adaptive_field = std::move(a);
  c.fixed_field = std::move(f);
  return c;
}

CalibrationResult calibrate_tol(const RunConfig& config, int target_digits, const std::vector<double>& schedule) {
  if (schedule.empty()) throw ConfigError("calibration schedule is empty");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (!(schedule[i] < schedule[i - 1])) throw ConfigError("calibration schedule must be strictly decreasing");
  CalibrationResult result;
  for (double tol : schedule) {
    RunConfig cfg = config;
    cfg.tol = tol;
    const TwinComparison c = compare_runs(cfg);
    result.table.push_back({tol, c.digits, c.common_time, c.adaptive_moments, c.fixed_moments});
    if (c.digits >= target_digits) {
      result.selected_tol = tol;
      break;
    }
  }
  return result;
}

}  // namespace blowup
