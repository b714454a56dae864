#pragma once

#include <cstddef>
#include <functional>

namespace astute {

/// Worker count: ASTUTE_NP_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Jobs must
/// write only to their own slot of any shared output. The first exception
/// thrown by a job is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace astute
