#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>

namespace ghost::fft {

// fftw_execute_dft is thread-safe; the planner is not, hence the mutex around plan creation.
// Plans are unaligned so any std::complex<double> buffer can be executed deterministically.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (p == nullptr) throw std::runtime_error("fft: FFTW planning failed");
    plans_.emplace(key, p);
    return p;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline void execute(std::span<std::complex<double>> data, int sign) {
  fftw_plan p = PlanCache::instance().get(data.size(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

/// In-place unnormalized forward DFT, X_j = sum_k x_k exp(-2 pi i jk/n).
inline void forward(std::span<std::complex<double>> data) { execute(data, FFTW_FORWARD); }

/// In-place inverse DFT including the 1/n factor.
inline void inverse(std::span<std::complex<double>> data) {
  execute(data, FFTW_BACKWARD);
  const double s = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= s;
}

/// Spatial frequency of DFT bin j in cycles per meter (numpy fftfreq ordering).
inline double frequency(std::size_t j, std::size_t n, double dx) {
  const auto sj = static_cast<double>(j);
  const auto sn = static_cast<double>(n);
  return (j < (n + 1) / 2 ? sj : sj - sn) / (sn * dx);
}

}  // namespace ghost::fft
