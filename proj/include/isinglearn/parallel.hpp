#pragma once

#include <cstdint>

namespace ising {

/// Number of worker threads OpenMP would use (1 in serial builds).
int max_workers();

/// Set the worker count for subsequent parallel regions. n <= 0 resets to the
/// runtime default. No effect in serial builds.
void set_workers(int n);

/// True when compiled with OpenMP support.
bool openmp_enabled();

namespace detail {
void parallel_for_impl(std::int64_t count, void* ctx, void (*body)(void*, std::int64_t));
}

/// Run body(i) for i in [0, count). Bodies must write only to slots indexed by
/// i; under that discipline results are identical for any worker count.
template <class F>
void parallel_for(std::int64_t count, F&& body) {
  detail::parallel_for_impl(count, &body, [](void* ctx, std::int64_t i) {
    (*static_cast<F*>(ctx))(i);
  });
}

}  // namespace ising
