#pragma once

#include <algorithm>
#include <cstdlib>

namespace blowup {

/// Inclusive range of integer wavenumbers [lo, hi].
struct ModeRange {
  int lo = 0;
  int hi = -1;

  constexpr int size() const { return hi >= lo ? hi - lo + 1 : 0; }
  constexpr bool empty() const { return hi < lo; }
  constexpr bool contains(int k) const { return k >= lo && k <= hi; }
  constexpr bool contains(ModeRange other) const {
    return other.empty() || (other.lo >= lo && other.hi <= hi);
  }
  constexpr int max_abs() const { return std::max(std::abs(lo), std::abs(hi)); }

  /// [-n/2, n/2 - 1], the usual truncation for an n-point grid.
  static constexpr ModeRange symmetric(int n) { return {-n / 2, n / 2 - 1}; }

  /// The range with its unpaired lowest mode removed when it is of the form
  /// [-K, K-1]; used for conjugate-symmetric (real) fields.
  constexpr ModeRange paired() const {
    return (lo == -hi - 1) ? ModeRange{lo + 1, hi} : *this;
  }

  constexpr bool operator==(const ModeRange&) const = default;
};

constexpr ModeRange intersect(ModeRange a, ModeRange b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

}  // namespace blowup
