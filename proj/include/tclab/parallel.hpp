#pragma once

#include <cstddef>
#include <functional>

namespace tclab {

/// Parallelism cap: TCLAB_THREADS when set, hardware concurrency otherwise.
unsigned thread_cap();

/// Run fn(i) for i in [0, n) across at most thread_cap() threads.  Work items
/// must be independent; exact arithmetic keeps results order-independent.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace tclab
