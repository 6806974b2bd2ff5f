#pragma once

#include <cstddef>
#include <functional>

namespace opo {

// Worker count: OPO_THREADS if set, else hardware concurrency.
unsigned thread_count();

// Runs fn(i) for i in [0, n) on up to thread_count() threads. Each index is
// visited exactly once; callers write into pre-sized slots so results do not
// depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace opo
