#pragma once

// Deterministic parallel loops: results are written per index and reduced
// serially afterwards, so output never depends on the thread count.

#include <omp.h>

#include <cstddef>
#include <exception>
#include <mutex>

namespace hilb2::parallel {

/// Threads used by library kernels; 0 means the OpenMP default.
void set_threads(int n);
int threads();

/// Runs fn(i) for i in [0, n) with dynamic scheduling.  The first exception
/// thrown by any iteration is rethrown on the calling thread.
template <class F>
void for_each_index(std::size_t n, F&& fn) {
  std::exception_ptr error;
  std::mutex m;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads())
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

/// Serial reference with the same contract.
template <class F>
void for_each_index_serial(std::size_t n, F&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace hilb2::parallel
