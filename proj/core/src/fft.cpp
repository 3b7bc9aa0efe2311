#include "fft.hpp"

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <fftw3.h>

namespace dynkit::detail {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (n, sign) and kept for the process.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> scratch(static_cast<size_t>(n));
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  // ESTIMATE keeps the plan (and therefore the rounding) reproducible.
  fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw NumericalError("fftw: plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_inplace(cplx* data, int n, int sign) {
  if (n <= 1) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan_for(n, sign), buf, buf);
}

void alternate_signs(cplx* data, int n) {
  for (int k = 1; k < n; k += 2) data[k] = -data[k];
}

}  // namespace dynkit::detail
