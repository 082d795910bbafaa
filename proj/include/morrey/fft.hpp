#pragma once

// Thin FFTW wrapper. Plans are cached per (rank, N, sign) and executed with
// the new-array interface on fftw_malloc'd buffers, so concurrent calls are
// safe and every call runs the same plan.

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "morrey/error.hpp"

namespace morrey::fft {

enum class Direction { forward, backward };

namespace detail {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : n(n), data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  std::size_t n;
  fftw_complex* data;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int rank, int n, Direction dir) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(rank, n, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int i = 0; i < rank; ++i) total *= static_cast<std::size_t>(n);
    FftwBuffer in(total), out(total);
    const int dims[3] = {n, n, n};
    fftw_plan p = fftw_plan_dft(rank, dims, in.data, out.data, dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    if (!p) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [_, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, Direction>, fftw_plan> plans_;
};

}  // namespace detail

/// Unnormalized DFT of an N^rank array, row-major. Forward uses exp(-2 pi i jk/N).
inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& data, int rank, int n,
                                             Direction dir) {
  fftw_plan plan = detail::PlanCache::instance().get(rank, n, dir);
  detail::FftwBuffer in(data.size()), out(data.size());
  std::memcpy(in.data, data.data(), data.size() * sizeof(fftw_complex));
  fftw_execute_dft(plan, in.data, out.data);
  std::vector<std::complex<double>> result(data.size());
  std::memcpy(static_cast<void*>(result.data()), out.data, data.size() * sizeof(fftw_complex));
  return result;
}

}  // namespace morrey::fft
