#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blowup/exponents.hpp"

namespace blowup::cli {

namespace fs = std::filesystem;

/// Default output directory when neither --out nor run.output_dir is given.
inline constexpr const char* kOutputDirEnv = "BLOWUP_OUTPUT_DIR";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;         ///< runtime failure (I/O, fit domain)
inline constexpr int kExitUsage = 2;           ///< bad arguments, config or input file
inline constexpr int kExitNotCalibrated = 3;   ///< no TOL in the schedule reached the target

inline constexpr const char* kEventsFile = "events.csv";
inline constexpr const char* kOutcomeFile = "outcome.json";
inline constexpr const char* kSnapshotFile = "final_field.txt";
inline constexpr const char* kExponentsFile = "exponents.json";
inline constexpr const char* kMaxqFile = "maxq_vs_invdist.dat";
inline constexpr const char* kAlphaScaleFile = "alpha_vs_scale.dat";
inline constexpr const char* kAlphaTimeFile = "alpha_vs_time.dat";
inline constexpr const char* kCompareFile = "compare.json";
inline constexpr const char* kCalibrationFile = "calibration.json";

/// --out, then the config's run.output_dir, then $BLOWUP_OUTPUT_DIR, then ".".
fs::path resolve_output_dir(const std::optional<fs::path>& flag, const std::string& config_dir);

int cmd_run(const fs::path& config, const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& err);
int cmd_calibrate(const fs::path& config, const std::optional<fs::path>& out_dir, int digits,
                  const std::vector<double>& schedule, std::ostream& out, std::ostream& err);
int cmd_exponents(const fs::path& events_csv, const std::optional<fs::path>& out_dir,
                  const std::optional<TcWindow>& window, std::ostream& out, std::ostream& err);
int cmd_compare(const fs::path& config, const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& err);

/// Parses `blowup <run|calibrate|exponents|compare> ...` and dispatches.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace blowup::cli
