#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

/// Invalid or unsupported configuration (bad grid size, non-integer NLS
/// exponent, malformed config file, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time step produced non-finite coefficients.
class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of a fit (non-positive values on a log axis,
/// too few points).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A data file that cannot be parsed; the message carries the line number.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blowup
