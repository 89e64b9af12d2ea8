#pragma once

#include <cstddef>
#include <functional>

namespace cloneq {

// Worker count: CLONEQ_THREADS env var when set (clamped to >= 1),
// otherwise the hardware concurrency.
int worker_count();

// Runs fn(0..count-1) across workers. Each index writes only its own
// output slot, so results are deterministic regardless of scheduling.
// The first exception thrown by any item is rethrown after the join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace cloneq
