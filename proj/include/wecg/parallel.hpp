#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace wecg {

// Runs body(i) for i in [0, count) across an OpenMP team of `threads`
// (0 = runtime default). The first exception thrown by any iteration is
// rethrown on the calling thread after the loop.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, int threads = 0) {
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto n = static_cast<std::ptrdiff_t>(count);
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace wecg
