#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>

#include "aoi/mc.hpp"

namespace aoi::detail {

// Index-parallel loop with fixed work assignment. Exceptions are captured and
// rethrown after the loop (they must not escape an OpenMP region).
template <typename Fn>
void for_each_index(std::size_t count, Exec exec, Fn&& fn) {
  std::exception_ptr error;
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
        if (!error) error = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) fn(i);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace aoi::detail
