#include "blowup/cli.hpp"

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "blowup/config.hpp"
#include "blowup/errors.hpp"
#include "blowup/io.hpp"

namespace blowup::cli {
namespace {

const std::vector<double> kDefaultSchedule{1e-6, 1e-10, 1e-16};

fs::path prepare_dir(const std::optional<fs::path>& flag, const std::string& config_dir) {
  const fs::path dir = resolve_output_dir(flag, config_dir);
  fs::create_directories(dir);
  return dir;
}

// Runs `body`, translating library exceptions into exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

TcWindow parse_window(const std::string& text) {
  const std::vector<double> v = parse_number_list(text, "--tc-window");
  if (v.size() != 2) throw ConfigError("--tc-window: expected lo,hi");
  if (!(v[1] > v[0])) throw ConfigError("--tc-window: hi must exceed lo");
  return {v[0], v[1]};
}

}  // namespace

fs::path resolve_output_dir(const std::optional<fs::path>& flag, const std::string& config_dir) {
  if (flag && !flag->empty()) return *flag;
  if (!config_dir.empty()) return config_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

int cmd_run(const fs::path& config, const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config);
    const fs::path dir = prepare_dir(out_dir, cfg.output_dir);
    const RunOutcome outcome = run_adaptive(cfg.run);
    const OutcomeRecord record = summarize(outcome);
    write_events_csv(dir / kEventsFile, outcome.events);
    write_outcome_json(dir / kOutcomeFile, record);
    write_snapshot(dir / kSnapshotFile, outcome.final_field);
    out << "termination: " << to_string(outcome.termination) << " at t = " << format_number(outcome.final_time)
        << " (N = " << record.final_resolution << ", " << outcome.events.size() << " refinement events)\n";
    if (record.singularity_detected)
      out << "resolution exhausted: singularity suspected\n";
    else
      out << "no singularity: resolution was not exhausted before t_end\n";
    return kExitOk;
  });
}

int cmd_calibrate(const fs::path& config, const std::optional<fs::path>& out_dir, int digits,
                  const std::vector<double>& schedule, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (digits < 0) throw ConfigError("--digits must be non-negative");
    const ExperimentConfig cfg = load_config(config);
    const fs::path dir = prepare_dir(out_dir, cfg.output_dir);
    CalibrationRecord record;
    record.target_digits = digits;
    record.schedule = schedule.empty() ? kDefaultSchedule : schedule;
    record.result = calibrate_tol(cfg.run, digits, record.schedule);
    write_calibration_json(dir / kCalibrationFile, record);
    for (const auto& row : record.result.table)
      out << "TOL " << format_number(row.tol) << ": " << row.digits << " digits\n";
    if (!record.result.selected_tol) {
      err << "calibration failed: no TOL in the schedule reached " << digits << " digits\n";
      return kExitNotCalibrated;
    }
    out << "selected TOL " << format_number(*record.result.selected_tol) << '\n';
    return kExitOk;
  });
}

int cmd_exponents(const fs::path& events_csv, const std::optional<fs::path>& out_dir,
                  const std::optional<TcWindow>& window, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<RefinementEvent> events = read_events_csv(events_csv);
    const fs::path dir = prepare_dir(out_dir, {});
    const ExponentReport report = analyze_exponents(events, window);
    write_exponents_json(dir / kExponentsFile, report);

    std::vector<double> inv_dist, xi, scale, dist, alpha_s, alpha_t;
    for (const auto& e : events) {
      inv_dist.push_back(1.0 / (report.tc_hat - e.T));
      xi.push_back(e.xi);
      if (e.a1(1) > 0.0) {
        scale.push_back(e.l);
        dist.push_back(report.tc_hat - e.T);
        alpha_s.push_back(e.a1(1));
      }
    }
    write_columns(dir / kMaxqFile, inv_dist, xi);
    write_columns(dir / kAlphaScaleFile, scale, alpha_s);
    write_columns(dir / kAlphaTimeFile, dist, alpha_s);

    out << "T_c = " << format_number(report.tc_hat) << " (r = " << format_number(report.tc_r) << ")\n";
    out << "gamma_direct = " << format_number(report.gamma_direct) << '\n';
    if (report.tc_at_boundary) err << "warning: T_c optimum lies on the search window boundary\n";
    if (report.scaling_available)
      out << "gamma_scaling = " << format_number(report.gamma_scaling) << ", fixed point "
          << to_string(report.classification) << '\n';
    else
      err << "warning: too few positive memory coefficients for the scaling exponents\n";
    return kExitOk;
  });
}

int cmd_compare(const fs::path& config, const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config);
    const fs::path dir = prepare_dir(out_dir, cfg.output_dir);
    const CompareRecord record = summarize(compare_runs(cfg.run));
    write_compare_json(dir / kCompareFile, record);
    out << "speedup " << format_number(record.speedup) << ", field max difference "
        << format_number(record.field_max_diff) << ", moment digits " << record.digits << '\n';
    return kExitOk;
  });
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive spectral refinement toward finite-time singularities"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  int digits = 5;
  std::string schedule;
  std::string events;
  std::string window;

  auto* run = app.add_subcommand("run", "integrate with adaptive refinement; writes events.csv, outcome.json");
  run->add_option("--config", config, "experiment file")->required();
  run->add_option("--out", out_dir, "output directory");

  auto* cal = app.add_subcommand("calibrate", "pick TOL by adaptive/fixed agreement; writes calibration.json");
  cal->add_option("--config", config, "experiment file")->required();
  cal->add_option("--out", out_dir, "output directory");
  cal->add_option("--digits", digits, "matching digits required")->capture_default_str();
  cal->add_option("--schedule", schedule, "decreasing TOL list, e.g. 1e-6,1e-10,1e-16");

  auto* exp = app.add_subcommand("exponents", "fit blow-up exponents to an event log; writes exponents.json");
  exp->add_option("events", events, "events.csv from a run")->required();
  exp->add_option("--out", out_dir, "output directory");
  exp->add_option("--tc-window", window, "T_c search window lo,hi");

  auto* cmp = app.add_subcommand("compare", "adaptive run against the fixed final resolution; writes compare.json");
  cmp->add_option("--config", config, "experiment file")->required();
  cmp->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::optional<fs::path> out_path = out_dir.empty() ? std::nullopt : std::optional<fs::path>(out_dir);
  if (run->parsed()) return cmd_run(config, out_path, out, err);
  if (cmp->parsed()) return cmd_compare(config, out_path, out, err);
  if (cal->parsed()) {
    std::vector<double> list;
    if (!schedule.empty()) {
      try {
        list = parse_number_list(schedule, "--schedule");
      } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
      }
    }
    return cmd_calibrate(config, out_path, digits, list, out, err);
  }
  std::optional<TcWindow> tc_window;
  if (!window.empty()) {
    try {
      tc_window = parse_window(window);
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return cmd_exponents(events, out_path, tc_window, out, err);
}

}  // namespace blowup::cli
