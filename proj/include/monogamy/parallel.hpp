#pragma once

#include <cstddef>
#include <functional>

namespace monogamy {

/// Worker count: MONOGAMY_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads. Results
/// must be written to slot i by the caller so ordering never depends on
/// scheduling. The first exception thrown is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace monogamy
