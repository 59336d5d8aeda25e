#include "blowup/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "blowup/errors.hpp"

namespace blowup {

bool is_smooth_size(long n) {
  if (n < 1) return false;
  while (n % 2 == 0) n /= 2;
  while (n % 3 == 0) n /= 3;
  return n == 1;
}

long next_smooth_size(long n) {
  if (n <= 1) return 1;
  long best = -1;
  for (long p2 = 1; p2 < 2 * n; p2 *= 2) {
    long v = p2;
    while (v < n) v *= 3;
    if (best < 0 || v < best) best = v;
  }
  return best;
}

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW's planner is not re-entrant; execution of an existing plan on new
// arrays is. FFTW_ESTIMATE keeps the chosen algorithm (and hence the
// rounding) identical from run to run.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  const PlanPair& get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    GridBuffer scratch(static_cast<std::size_t>(n));
    auto* data = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair p;
    p.forward = fftw_plan_dft_1d(n, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_1d(n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!p.forward || !p.backward) throw ConfigError("FFTW could not plan a transform of length " + std::to_string(n));
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<Complex> data, bool forward) {
  if (data.empty()) return;
  const auto& plans = cache().get(static_cast<int>(data.size()));
  fftw_plan plan = forward ? plans.forward : plans.backward;
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  if (fftw_alignment_of(reinterpret_cast<double*>(ptr)) == 0) {
    fftw_execute_dft(plan, ptr, ptr);
    return;
  }
  GridBuffer tmp(data.begin(), data.end());
  auto* tptr = reinterpret_cast<fftw_complex*>(tmp.data());
  fftw_execute_dft(plan, tptr, tptr);
  std::copy(tmp.begin(), tmp.end(), data.begin());
}

}  // namespace

void fft_forward(std::span<Complex> data) { execute(data, true); }
void fft_backward(std::span<Complex> data) { execute(data, false); }

}  // namespace blowup
