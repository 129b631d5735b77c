#pragma once

#include <cstddef>
#include <functional>

namespace rtshuffle {

/// Worker count: RTSHUFFLE_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, count) across worker_count() threads.
/// Indices are handed out in contiguous blocks; body must only write to
/// per-index state. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rtshuffle
