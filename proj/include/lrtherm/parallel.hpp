#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lrtherm {

inline int hardware_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Serial reference for map_samples. Kept as the baseline the parallel kernel
// must reproduce slot for slot.
template <typename T, typename Fn>
std::vector<T> map_samples_serial(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  for (std::size_t s = 0; s < n; ++s) out[s] = fn(s);
  return out;
}

// Evaluates fn(0..n-1) in parallel. Each result is written to its own slot,
// so the output is identical to map_samples_serial for any worker count.
// The first exception thrown by a worker is rethrown after the loop drains.
template <typename T, typename Fn>
std::vector<T> map_samples(std::size_t n, Fn&& fn, int workers = 0) {
#ifndef _OPENMP
  (void)workers;
  return map_samples_serial<T>(n, std::forward<Fn>(fn));
#else
  if (workers <= 0) workers = omp_get_max_threads();
  std::vector<T> out(n);
  std::exception_ptr first_error = nullptr;
  std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      out[static_cast<std::size_t>(s)] = fn(static_cast<std::size_t>(s));
    } catch (...) {
#pragma omp critical(lrtherm_map_samples_error)
      {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
#endif
}

}  // namespace lrtherm
