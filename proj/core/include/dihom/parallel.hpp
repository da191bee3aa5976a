#ifndef DIHOM_PARALLEL_HPP
#define DIHOM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace dihom {

/// Number of worker threads: hardware concurrency, capped by the
/// DIHOM_THREADS environment variable when set.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n); items are independent and may execute on
/// several threads.  Exceptions are rethrown on the caller.  Callers index
/// results by i, so output order never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace dihom

#endif
