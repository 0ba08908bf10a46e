#pragma once

#include <cstddef>
#include <functional>

namespace costbound {

/// Worker count: COSTBOUND_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count). Each index is processed exactly once;
/// callers write results into per-index slots so the outcome is independent
/// of scheduling. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace costbound
