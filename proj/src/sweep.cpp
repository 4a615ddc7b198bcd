#include "ktgeom/sweep.hpp"

#include <omp.h>

#include <exception>
#include <vector>

namespace ktgeom {

void sweep(std::size_t count, const std::function<void(std::size_t)>& body, Execution exec) {
  std::vector<std::exception_ptr> errors(count);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      try {
        body(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int parallel_workers() { return omp_get_max_threads(); }

}  // namespace ktgeom
