#pragma once

#include <cstddef>
#include <functional>

namespace wiretap {

// Number of worker threads used by parallel_for: hardware concurrency, capped
// by the WIRETAP_TAS_THREADS environment variable when it is set to a positive
// integer. Always at least 1.
int worker_count();

// Runs fn(i) for i in [0, n) across worker_count() threads. Iterations are
// claimed from a shared atomic counter, so fn must only touch state owned by
// iteration i (e.g. a preallocated result slot). The first exception thrown by
// any iteration is rethrown on the calling thread after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace wiretap
