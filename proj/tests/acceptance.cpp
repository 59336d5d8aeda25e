// End-to-end acceptance checks, one PASS/FAIL line per criterion.
//   acceptance [criterion ...]     (default: all of 1-9)

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "blowup/cli.hpp"
#include "blowup/config.hpp"
#include "blowup/exponents.hpp"
#include "blowup/fft.hpp"
#include "blowup/io.hpp"
#include "oracles.hpp"

using namespace blowup;

namespace {

const fs::path kConfigs = BLOWUP_CONFIG_DIR;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("blowup_acceptance_" + std::to_string(::getpid())) / name;
  fs::create_directories(dir);
  return dir;
}

// The Burgers 32 -> 8192 run is shared by criteria 1, 2, 5 and 8.
struct BurgersRun {
  RunOutcome outcome;
  ExponentReport report;
  double worst_gradient_error = 0.0;  ///< relative, over t <= 0.9
  long gradient_samples = 0;
};

const BurgersRun& burgers_run() {
  static const BurgersRun run = [] {
    BurgersRun r;
    const ExperimentConfig cfg = load_config(kConfigs / "burgers.ini");
    const ModelSpec model = cfg.run.model;
    r.outcome = run_adaptive(cfg.run, [&](const SpectralField& u) {
      const double t = u.time();
      if (t > 0.9) return;
      const double exact = 1.0 / (1.0 - t);
      r.worst_gradient_error = std::max(r.worst_gradient_error, std::abs(blowup_quantity(u, model) - exact) / exact);
      ++r.gradient_samples;
    });
    r.report = analyze_exponents(r.outcome.events);
    return r;
  }();
  return run;
}

Verdict criterion1() {
  const BurgersRun& b = burgers_run();
  const ExponentReport& r = b.report;
  const double r2 = r.direct_fit.r * r.direct_fit.r;
  const bool ok = b.outcome.termination == Termination::resolution_exhausted && r.gamma_direct >= 0.99 &&
                  r.gamma_direct <= 1.01 && r2 >= 0.9999 && r.tc_hat >= 0.997 && r.tc_hat <= 1.003;
  return {ok, "gamma = " + fmt("%.8f", r.gamma_direct) + ", r^2 = " + fmt("%.10f", r2) + ", T_c = " +
                  fmt("%.8f", r.tc_hat) + " (" + std::to_string(b.outcome.events.size()) + " events)"};
}

Verdict criterion2() {
  const ExponentReport& r = burgers_run().report;
  const bool ok = r.scaling_available && r.gamma_scaling >= 0.90 && r.gamma_scaling <= 1.10 && r.beta1 > 0.0 &&
                  r.classification == FixedPointClass::unstable;
  return {ok, "gamma' = " + fmt("%.5f", r.gamma_scaling) + ", beta1 = " + fmt("%.4f", r.beta1) + ", beta2 = " +
                  fmt("%.4f", r.beta2) + ", delta = " + fmt("%.4f", r.delta) + ", " + to_string(r.classification)};
}

Verdict criterion3() {
  const ExperimentConfig cfg = load_config(kConfigs / "nls_1.35.ini");
  const RunOutcome out = run_adaptive(cfg.run);
  if (out.events.size() < 4) return {false, "only " + std::to_string(out.events.size()) + " refinement events"};
  const ExponentReport r = analyze_exponents(out.events);
  const double rel = std::abs(r.gamma_direct - 1.0 / 6.0) * 6.0;
  const bool ok = out.termination == Termination::resolution_exhausted && rel <= 0.02 && r.tc_r >= 0.999999;
  return {ok, "gamma = " + fmt("%.6f", r.gamma_direct) + " (" + fmt("%.2f", 100 * rel) + "% from 1/6), T_c = " +
                  fmt("%.7f", r.tc_hat) + ", r = " + fmt("%.9f", r.tc_r)};
}

Verdict criterion4() {
  const fs::path dir = scratch_dir("nls_1.242");
  std::ostringstream out, err;
  const int code = cli::cmd_run(kConfigs / "nls_1.242.ini", dir, out, err);
  if (code != cli::kExitOk) return {false, "run exited with " + std::to_string(code) + ": " + err.str()};
  const OutcomeRecord o = read_outcome_json(dir / cli::kOutcomeFile);
  const bool reported = out.str().find("no singularity") != std::string::npos;
  const bool ok = o.termination == Termination::t_end_reached && !o.singularity_detected && reported;
  return {ok, "termination " + to_string(o.termination) + " at t = " + fmt("%.4f", o.final_time) + ", N = " +
                  std::to_string(o.final_resolution)};
}

Verdict criterion5() {
  const RunOutcome& adaptive = burgers_run().outcome;
  bool ok = adaptive.T_B_first.has_value();
  if (adaptive.T_A_first) ok = ok && *adaptive.T_B_first < *adaptive.T_A_first;
  double worst_detA = 0.0, least_detB = INFINITY;
  for (const RefinementEvent& e : adaptive.events) {
    worst_detA = std::max(worst_detA, std::abs(e.detA));
    least_detB = std::min(least_detB, std::abs(e.detB));
  }
  ok = ok && worst_detA < kDetAFloor && least_detB >= 1e-10;

  // monitor-only runs at fixed resolution, where both determinants eventually trip
  std::string windows;
  for (int n : {32, 64, 128, 256}) {
    RunConfig cfg = load_config(kConfigs / "burgers.ini").run;
    cfg.ladder = {n};
    cfg.tol = INFINITY;
    cfg.t_end = 0.95;
    const RunOutcome m = run_adaptive(cfg);
    const bool both = m.T_B_first && m.T_A_first;
    ok = ok && both && *m.T_B_first < *m.T_A_first;
    windows += " N=" + std::to_string(n) + ":[" + (m.T_B_first ? fmt("%.3f", *m.T_B_first) : "-") + "," +
               (m.T_A_first ? fmt("%.3f", *m.T_A_first) : "-") + ")";
  }
  return {ok, "max |detA| at triggers " + fmt("%.2e", worst_detA) + ", min |detB| " + fmt("%.2e", least_detB) +
                  ";" + windows};
}

Verdict criterion6() {
  const fs::path dir = scratch_dir("compare");
  std::ostringstream out, err;
  const int code = cli::cmd_compare(kConfigs / "burgers_compare.ini", dir, out, err);
  if (code != cli::kExitOk) return {false, "compare exited with " + std::to_string(code) + ": " + err.str()};
  const CompareRecord c = read_compare_json(dir / cli::kCompareFile);
  const bool ok = c.field_max_diff <= 1e-5 && c.digits >= 5 && c.speedup >= 20.0;
  return {ok, "field diff " + fmt("%.2e", c.field_max_diff) + ", " + std::to_string(c.digits) + " digits, speedup " +
                  fmt("%.1f", c.speedup) + "x (" + fmt("%.2f", c.adaptive_wall_clock) + " s vs " +
                  fmt("%.2f", c.fixed_wall_clock) + " s)"};
}

Verdict criterion7() {
  double worst = 0.0;
  auto track = [&](double v) { worst = std::max(worst, v); };
  const std::vector<ModelSpec> models{ModelSpec::burgers(), ModelSpec::nls(1.0), ModelSpec::nls(2.0),
                                     ModelSpec::nls(3.0)};
  std::uint64_t seed = 1;
  for (int n = 4; n <= 32; n += 4) {
    if (!is_smooth_size(n)) continue;
    const Partition p = Partition::for_resolution(n);
    for (const ModelSpec& model : models) {
      const bool real = model.conjugate_symmetric();
      const SpectralField u = oracle::random_field(p.full, seed++, real);
      const SpectralField v = oracle::random_field(p.full, seed++, real);
      track(oracle::rel_diff(truncated_convolution(u, v, p.full, p.resolved, p.augmented),
                             oracle::convolution(u, v, p.full, p.resolved, p.augmented)));
      for (Level level : {Level::reduced, Level::full})
        for (int j = 0; j < 2; ++j)
          track(oracle::rel_diff(evaluate_term(model, j, u, 0.8, p, level), oracle::term(model, j, u, 0.8, p, level)));
      track(oracle::rel_diff(compute_A(u, 0.8, model, p), oracle::A(u, 0.8, model, p)));
      track(oracle::rel_diff(compute_B(u, 0.8, model, p), oracle::B(u, 0.8, model, p)));

      // the Galerkin term neither creates nor destroys energy / mass
      const SpectralField g =
          real ? burgers_galerkin(u, p.full.paired()) : nls_galerkin(u, model.sigma, p.full);
      double rate = 0.0, scale = 0.0;
      for (int k = g.range().lo; k <= g.range().hi; ++k) {
        rate += 2.0 * (g[k] * std::conj(u[k])).real();
        scale += 2.0 * std::abs(g[k]) * std::abs(u[k]);
      }
      if (scale > 0.0) track(std::abs(rate) / scale);

      const RenormSnapshot s = take_snapshot(u, 0.8, model, p);
      const Vector2 a0(model.a0[0], model.a0[1]);
      track((s.e - s.A * a0).cwiseAbs().maxCoeff() / std::max(s.e.cwiseAbs().maxCoeff(), 1e-300));
    }
  }
  return {worst <= 1e-12, "worst relative deviation " + fmt("%.2e", worst) + " over N <= 32"};
}

Verdict criterion8() {
  const BurgersRun& b = burgers_run();
  const bool ok = b.gradient_samples > 100 && b.worst_gradient_error <= 1e-3;
  return {ok, "max relative error " + fmt("%.2e", b.worst_gradient_error) + " over " +
                  std::to_string(b.gradient_samples) + " steps with t <= 0.9"};
}

// alpha = l^b1, xi = l^-b2, T_c - T = alpha^(1/delta)
Verdict criterion9() {
  const double tc = 1.25, b1 = 0.739, b2 = 0.670, delta = 1.1026;
  std::vector<RefinementEvent> events;
  for (int i = 0; i < 10; ++i) {
    RefinementEvent e;
    e.n = i + 1;
    e.N = 32 << i;
    e.l = 4.0 * std::numbers::pi / e.N;
    const double alpha = std::pow(e.l, b1);
    e.T = tc - std::pow(alpha, 1.0 / delta);
    e.xi = std::pow(e.l, -b2);
    e.a1 = Vector2(1.0, alpha);
    e.a1_status = SolveStatus::solved;
    events.push_back(e);
  }
  const ExponentReport r = analyze_exponents(events);
  const double gamma = delta * b2 / b1;
  const double err = std::max({std::abs(r.tc_hat - tc), std::abs(r.gamma_direct - gamma), std::abs(r.beta1 - b1),
                               std::abs(r.beta2 - b2), std::abs(r.delta - delta)});
  const bool identity = r.gamma_scaling == r.delta * r.beta2 / r.beta1;
  return {err <= 1e-6 && identity, "max deviation " + fmt("%.2e", err) + ", gamma' identity " +
                                       (identity ? "exact" : "violated")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > int(criteria.size())) {
      std::fprintf(stderr, "usage: %s [criterion 1-9 ...]\n", argv[0]);
      return 2;
    }
    selected.insert(c);
  }
  if (selected.empty())
    for (int c = 1; c <= int(criteria.size()); ++c) selected.insert(c);

  int failures = 0;
  for (int c : selected) {
    Verdict v;
    try {
      v = criteria[c - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s %d: %s\n", v.pass ? "PASS" : "FAIL", c, v.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(fs::temp_directory_path() / ("blowup_acceptance_" + std::to_string(::getpid())));
  return failures == 0 ? 0 : 1;
}
