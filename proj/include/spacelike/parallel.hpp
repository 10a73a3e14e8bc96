#pragma once
// Minimal deterministic parallel-for. Each index writes only its own slot, so
// results do not depend on the thread count.

#include <cstddef>
#include <functional>

namespace spacelike {

/// Worker count: SPACELIKE_SURF_THREADS when set to a positive integer,
/// otherwise std::thread::hardware_concurrency().
int default_thread_count();

/// Calls fn(i) for i in [0, n). threads <= 0 means default_thread_count().
/// If any call throws, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

} // namespace spacelike
