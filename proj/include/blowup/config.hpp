#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "blowup/driver.hpp"

namespace blowup {

/// An experiment file: INI sections [model], [resolution], [criterion],
/// [integrator] and [run]. Unknown sections or keys are rejected.
struct ExperimentConfig {
  RunConfig run;
  std::string output_dir;  ///< empty when not given
  std::uint64_t seed = 0;
};

/// Both throw ConfigError naming the offending "section.key".
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Comma-separated list of numbers, e.g. "1e-6,1e-10".
std::vector<double> parse_number_list(const std::string& text, const std::string& what);

}  // namespace blowup
