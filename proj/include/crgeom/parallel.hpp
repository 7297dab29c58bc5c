#pragma once

#include <cstddef>
#include <functional>

namespace crgeom {

/// Worker count: hardware concurrency, capped by CR_TOOL_THREADS when set to a
/// positive integer. At least 1.
int worker_threads();

/// Override for the current process (0 restores the environment default).
void set_worker_threads(int n);

/// Runs fn(i) for i in [0, n). Every index is handled by exactly one worker;
/// the first exception thrown is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace crgeom
