#pragma once

#include <cstddef>
#include <functional>

namespace extrapkit {

/// Worker count: EXTRAPKIT_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// body(begin, end) for each. Callers write disjoint outputs, so results do
/// not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace extrapkit
