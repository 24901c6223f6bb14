#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace czlab {

// Parallel map over [0, n). Each index writes its own output slot, so the
// result is independent of the thread count; reductions are done serially
// by the callers to keep runs bit-reproducible.
template <class F>
void parallel_for(std::int64_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) body(i);
#else
  for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

inline void set_worker_count(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace czlab
