// Minimal deterministic work partitioning: each index is processed as an
// independent unit and results land in caller-owned slots, so the outcome is
// identical for any worker count.
#pragma once

#include <cstddef>
#include <functional>

namespace werner {

// Resolve the worker count: explicit request > WERNER_THREADS env > 1.
unsigned resolve_threads(unsigned requested);

// Run fn(i) for i in [0, n) on up to `threads` workers. Exceptions from
// workers are captured and the first one rethrown after joining.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace werner
