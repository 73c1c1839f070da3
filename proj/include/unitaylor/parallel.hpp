#pragma once

#include <cstddef>
#include <functional>

namespace unitaylor {

// Worker count: UNITAYLOR_THREADS if set, else hardware concurrency.
std::size_t worker_count();

// Runs body(i) for i in [0, n). Each index is visited exactly once, so
// results written per index are independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace unitaylor
