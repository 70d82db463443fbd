#include "isinglearn/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ising {

int max_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_workers(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

namespace detail {

void parallel_for_impl(std::int64_t count, void* ctx, void (*body)(void*, std::int64_t)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) body(ctx, i);
#else
  for (std::int64_t i = 0; i < count; ++i) body(ctx, i);
#endif
}

}  // namespace detail

}  // namespace ising
