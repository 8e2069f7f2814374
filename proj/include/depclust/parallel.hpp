#pragma once

#include <cstddef>
#include <functional>

namespace depclust {

/// Number of worker threads used by parallel_for. Defaults to the hardware
/// concurrency, capped by the DEPCLUST_THREADS environment variable when set.
std::size_t worker_count();

/// Overrides worker_count() for the whole process; 0 restores the default.
void set_worker_count(std::size_t workers);

/// Runs body(i) for i in [0, count). Iterations may run concurrently, so
/// body must only write to per-index state. Calls nested inside a running
/// parallel_for execute serially on the calling thread. The first exception
/// thrown by any iteration is rethrown after all workers have stopped.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace depclust
