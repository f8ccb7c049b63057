#pragma once

#include <cstddef>
#include <functional>

namespace kura {

/// Worker cap for data-parallel loops: hardware concurrency, clamped by the
/// KURA_THREADS environment variable and by the job count.
int worker_count(std::size_t job_count);

/// Runs fn(i) for every i in [0, count). fn must only touch per-index state;
/// results are then independent of scheduling. Exceptions are rethrown on the
/// calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace kura
