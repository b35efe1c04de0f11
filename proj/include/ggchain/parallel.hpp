#pragma once

#include <cstddef>
#include <functional>

namespace ggchain {

/// Worker cap: GGCHAIN_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned max_threads();

/// Runs body(i) for every i in [0, count), splitting the range into
/// contiguous slices across up to max_threads() workers. body must only
/// write state owned by index i; results are then independent of the
/// worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ggchain
