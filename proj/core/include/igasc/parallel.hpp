#pragma once

#include <cstddef>
#include <functional>

namespace igasc {

/// Worker count: IGASC_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least one).
int default_thread_count();

/// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Work items must write only to their own outputs; the first exception
/// thrown by any item is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace igasc
