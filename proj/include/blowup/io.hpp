#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blowup/driver.hpp"
#include "blowup/exponents.hpp"

namespace blowup {

namespace fs = std::filesystem;

inline constexpr const char* kEventsHeader = "n,T_n,N_n,l_n,xi_n,alpha1,alpha2,detB,detA,E1,E2";

/// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

// All readers throw FormatError (with a line number where one applies).

void write_events_csv(const fs::path& path, std::span<const RefinementEvent> events);
std::vector<RefinementEvent> parse_events_csv(const std::string& text);
std::vector<RefinementEvent> read_events_csv(const fs::path& path);

struct OutcomeRecord {
  double final_time = 0.0;
  Termination termination = Termination::t_end_reached;
  double wall_clock = 0.0;
  std::optional<double> T_B_first;
  std::optional<double> T_A_first;
  long steps = 0;
  int final_resolution = 0;
  int refinements = 0;
  /// The last rung of the ladder was exhausted (or the field overflowed).
  bool singularity_detected = false;
};

OutcomeRecord summarize(const RunOutcome& outcome);
void write_outcome_json(const fs::path& path, const OutcomeRecord& outcome);
OutcomeRecord read_outcome_json(const fs::path& path);

/// One "k Re Im" line per mode, preceded by a "# t = ..." comment.
void write_snapshot(const fs::path& path, const SpectralField& u);
SpectralField read_snapshot(const fs::path& path);

/// Two whitespace-separated columns.
void write_columns(const fs::path& path, std::span<const double> xs, std::span<const double> ys);
std::pair<std::vector<double>, std::vector<double>> read_columns(const fs::path& path);

void write_exponents_json(const fs::path& path, const ExponentReport& report);
ExponentReport read_exponents_json(const fs::path& path);

struct CompareRecord {
  double adaptive_wall_clock = 0.0;
  double fixed_wall_clock = 0.0;
  double speedup = 0.0;  ///< fixed / adaptive wall clock
  double adaptive_final_time = 0.0;
  double fixed_final_time = 0.0;
  double common_time = 0.0;
  double field_max_diff = 0.0;
  Moments adaptive_moments;
  Moments fixed_moments;
  int digits_E1 = 0;
  int digits_E2 = 0;
  int digits = 0;  ///< the smaller of the two
};

CompareRecord summarize(const TwinComparison& comparison);
void write_compare_json(const fs::path& path, const CompareRecord& record);
CompareRecord read_compare_json(const fs::path& path);

struct CalibrationRecord {
  int target_digits = 5;
  std::vector<double> schedule;
  CalibrationResult result;
};

void write_calibration_json(const fs::path& path, const CalibrationRecord& record);
CalibrationRecord read_calibration_json(const fs::path& path);

}  // namespace blowup
