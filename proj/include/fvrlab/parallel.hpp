#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fvrlab {

// Resolves a thread-count request: n > 0 is taken literally, n <= 0 means all
// available cores (1 when built without OpenMP).
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs fn(0), ..., fn(n-1).  threads == 1 takes the plain serial loop, kept
// as the reference path; the OpenMP lane must produce bit-identical results
// because every iteration writes only to its own slots in the caller's
// buffers and aggregation happens afterwards in index order.
template <class Fn>
void parallel_for_index(std::size_t n, int threads, Fn&& fn) {
  const int nthreads = resolve_threads(threads);
  if (nthreads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  std::vector<std::exception_ptr> failures(n);
  std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (failed.load()) {
    for (std::exception_ptr& e : failures) {
      if (e) std::rethrow_exception(e);
    }
  }
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace fvrlab
