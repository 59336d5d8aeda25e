#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "blowup/mode_range.hpp"

namespace blowup {

using Complex = std::complex<double>;

inline constexpr double kDomainLength = 2.0 * std::numbers::pi;

/// Fourier coefficients u_k of a 2pi-periodic field over a contiguous
/// wavenumber range, stamped with the simulation time.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(ModeRange range, double time = 0.0)
      : range_(range), time_(time), coeffs_(static_cast<std::size_t>(range.size())) {}

  ModeRange range() const { return range_; }
  int size() const { return range_.size(); }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  Complex& operator[](int k) { return coeffs_[static_cast<std::size_t>(k - range_.lo)]; }
  const Complex& operator[](int k) const {
    return coeffs_[static_cast<std::size_t>(k - range_.lo)];
  }
  /// Coefficient at k, or zero when k lies outside the stored range.
  Complex at_or_zero(int k) const { return range_.contains(k) ? (*this)[k] : Complex{}; }

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

 private:
  ModeRange range_{};
  double time_ = 0.0;
  std::vector<Complex> coeffs_;
};

}  // namespace blowup
