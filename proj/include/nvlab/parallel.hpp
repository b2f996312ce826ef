#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace nvlab {

/// Runs f(i) for i in [0, n) on the OpenMP thread team.
///
/// Iterations must write disjoint outputs. The first exception thrown by any
/// iteration is rethrown on the calling thread after the loop completes.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Number of threads an OpenMP parallel region would use.
int max_threads() noexcept;

}  // namespace nvlab
