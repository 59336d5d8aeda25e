#include "blowup/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blowup/errors.hpp"

namespace blowup {
namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double ssr = 0.0;
  int n = 0;
};

// Ordinary least squares. Points are sorted first so the result does not
// depend on the order of the input.
LineFit fit_line(std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  LineFit f;
  f.n = static_cast<int>(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= f.n;
  my /= f.n;
  double sxy = 0.0;
  for (const auto& [x, y] : pts) {
    f.sxx += (x - mx) * (x - mx);
    f.syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  f.slope = f.sxx > 0.0 ? sxy / f.sxx : 0.0;
  f.intercept = my - f.slope * mx;
  for (const auto& [x, y] : pts) {
    const double res = y - f.intercept - f.slope * x;
    f.ssr += res * res;
  }
  return f;
}

std::vector<std::pair<double, double>> log_points(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("fit_loglog: x and y lengths differ");
  if (xs.size() < 3) throw DomainError("fit_loglog: at least 3 points are required");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw DomainError("fit_loglog: values must be positive and finite (point " + std::to_string(i) + ")");
    pts.emplace_back(std::log(xs[i]), std::log(ys[i]));
  }
  return pts;
}

// 1 - r^2 of log xi against log(T_c - T_n), with T_c = t_last + d.
double straightness_defect(std::span<const RefinementEvent> events, double t_last, double d) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(events.size());
  for (const auto& e : events) pts.emplace_back(std::log((t_last - e.T) + d), std::log(e.xi));
  const LineFit f = fit_line(std::move(pts));
  if (f.syy == 0.0 || f.sxx == 0.0) return 1.0;
  return f.ssr / f.syy;
}

struct Survivors {
  std::vector<double> l, xi, alpha, dist;
  int excluded = 0;
};

Survivors alpha_survivors(std::span<const RefinementEvent> events, double tc) {
  Survivors s;
  for (const auto& e : events) {
    const double alpha = e.a1(1);
    if (!(alpha > 0.0) || !std::isfinite(alpha) || !(e.xi > 0.0) || !(tc - e.T > 0.0)) {
      ++s.excluded;
      continue;
    }
    s.l.push_back(e.l);
    s.xi.push_back(e.xi);
    s.alpha.push_back(alpha);
    s.dist.push_back(tc - e.T);
  }
  return s;
}

FixedPointClass classify(const ScalingFit& alpha_scale) {
  if (std::abs(alpha_scale.slope) <= 3.0 * alpha_scale.slope_stderr) return FixedPointClass::marginal;
  return alpha_scale.slope > 0.0 ? FixedPointClass::unstable : FixedPointClass::stable;
}

}  // namespace

ScalingFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
  const LineFit f = fit_line(log_points(xs, ys));
  if (f.sxx == 0.0) throw DomainError("fit_loglog: all x values are equal");
  ScalingFit out;
  out.slope = f.slope;
  out.intercept = f.intercept;
  out.n_points = f.n;
  out.degenerate = f.syy == 0.0;
  out.r = out.degenerate ? 0.0 : std::clamp(f.slope * std::sqrt(f.sxx / f.syy), -1.0, 1.0);
  out.slope_stderr = f.n > 2 ? std::sqrt(f.ssr / (f.n - 2) / f.sxx) : 0.0;
  return out;
}

TcEstimate estimate_Tc(std::span<const RefinementEvent> events, std::optional<TcWindow> window, int grid_points,
                       double tolerance) {
  if (events.size() < 4) throw DomainError("estimate_Tc: at least 4 refinement events are required");
  if (grid_points < 3) throw DomainError("estimate_Tc: grid needs at least 3 points");
  double t_last = -std::numeric_limits<double>::infinity();
  for (const auto& e : events) {
    if (!(e.xi > 0.0)) throw DomainError("estimate_Tc: blow-up quantity must be positive");
    t_last = std::max(t_last, e.T);
  }
  const TcWindow w = window.value_or(TcWindow{t_last, t_last + 0.5});
  if (w.lo < t_last) throw DomainError("estimate_Tc: window must start after the last refinement time");
  if (!(w.hi > w.lo)) throw DomainError("estimate_Tc: empty search window");

  const double d_hi = w.hi - t_last;
  const double d_lo = w.lo > t_last ? w.lo - t_last : 1e-9 * d_hi;
  const auto objective = [&](double d) { return straightness_defect(events, t_last, d); };

  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  const double ratio = std::log(d_hi / d_lo) / (grid_points - 1);
  for (int i = 0; i < grid_points; ++i) grid[static_cast<std::size_t>(i)] = d_lo * std::exp(ratio * i);
  grid.back() = d_hi;
  int best = 0;
  double best_val = objective(grid[0]);
  for (int i = 1; i < grid_points; ++i) {
    const double v = objective(grid[static_cast<std::size_t>(i)]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }

  // Golden-section refinement inside the neighbouring grid cells.
  double a = grid[static_cast<std::size_t>(std::max(best - 1, 0))];
  double b = grid[static_cast<std::size_t>(std::min(best + 1, grid_points - 1))];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > tolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  double d_best = 0.5 * (a + b);
  if (objective(d_best) > best_val) d_best = grid[static_cast<std::size_t>(best)];

  TcEstimate out;
  out.tc = t_last + d_best;
  out.at_boundary = best == 0 || best == grid_points - 1;
  out.r = direct_gamma(events, out.tc).r;
  return out;
}

ScalingFit direct_gamma(std::span<const RefinementEvent> events, double tc) {
  std::vector<double> inv_dist, xi;
  for (const auto& e : events) {
    if (!(tc > e.T)) throw DomainError("direct_gamma: T_c must exceed every refinement time");
    inv_dist.push_back(1.0 / (tc - e.T));
    xi.push_back(e.xi);
  }
  return fit_loglog(inv_dist, xi);
}

std::vector<RefinementEvent> renorm_flow(std::span<const RefinementEvent> events) {
  std::vector<RefinementEvent> flow(events.rbegin(), events.rend());
  for (std::size_t i = 0; i < flow.size(); ++i) flow[i].n = static_cast<int>(i) + 1;
  return flow;
}

const char* to_string(FixedPointClass c) {
  switch (c) {
    case FixedPointClass::unstable: return "unstable";
    case FixedPointClass::stable: return "stable";
    case FixedPointClass::marginal: return "marginal";
  }
  return "unknown";
}

ExponentReport scaling_gamma(std::span<const RefinementEvent> events, double tc) {
  ExponentReport rep;
  rep.tc_hat = tc;
  rep.direct_fit = direct_gamma(events, tc);
  rep.gamma_direct = rep.direct_fit.slope;

  const Survivors s = alpha_survivors(events, tc);
  rep.excluded = s.excluded;
  if (s.l.size() < 3)
    throw DomainError("scaling_gamma: only " + std::to_string(s.l.size()) +
                      " events have a positive memory coefficient (need 3)");
  rep.xi_scale_fit = fit_loglog(s.l, s.xi);
  rep.alpha_scale_fit = fit_loglog(s.l, s.alpha);
  rep.alpha_time_fit = fit_loglog(s.dist, s.alpha);
  rep.beta2 = -rep.xi_scale_fit.slope;
  rep.beta1 = rep.alpha_scale_fit.slope;
  rep.delta = rep.alpha_time_fit.slope;
  rep.gamma_scaling = rep.delta * rep.beta2 / rep.beta1;
  rep.fixed_point_stable = rep.beta1 <= 0.0;
  rep.classification = classify(rep.alpha_scale_fit);
  return rep;
}

double phase_transition_gamma(std::span<const RefinementEvent> events, double tc) {
  // Along the flow each step coarse-grains l by b_n = l_{n+1}/l_n:
  // xi_{n+1} = xi_n / b^{beta2}, alpha_{n+1} = alpha_n b^{beta1}, and the
  // starting coefficient scales as |T_c - T|^delta. Eliminating the step
  // count gives xi ~ |T_c - T|^{-delta beta2 / beta1}.
  const std::vector<RefinementEvent> flow = renorm_flow(events);
  return scaling_gamma(flow, tc).gamma_scaling;
}

BetaFunction beta_function(std::span<const RefinementEvent> events) {
  double tc = std::numeric_limits<double>::infinity();
  const Survivors s = alpha_survivors(events, tc);
  if (s.l.size() < 3)
    throw DomainError("beta_function: fewer than 3 events with a positive memory coefficient");
  const ScalingFit fit = fit_loglog(s.l, s.alpha);
  return {fit.slope, classify(fit)};
}

ExponentReport analyze_exponents(std::span<const RefinementEvent> events, std::optional<TcWindow> window) {
  const TcEstimate tc = estimate_Tc(events, window);
  ExponentReport rep;
  try {
    rep = scaling_gamma(events, tc.tc);
  } catch (const DomainError&) {
    rep = ExponentReport{};
    rep.tc_hat = tc.tc;
    rep.direct_fit = direct_gamma(events, tc.tc);
    rep.gamma_direct = rep.direct_fit.slope;
    rep.excluded = alpha_survivors(events, tc.tc).excluded;
    rep.scaling_available = false;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.beta1 = rep.beta2 = rep.delta = rep.gamma_scaling = nan;
  }
  rep.tc_r = tc.r;
  rep.tc_at_boundary = tc.at_boundary;
  return rep;
}

}  // namespace blowup
