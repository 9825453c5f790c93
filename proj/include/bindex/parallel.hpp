#pragma once

#include <cstddef>
#include <functional>

// Worker-pool helper for the embarrassingly parallel grid sweeps.  Bodies
// write to disjoint slots; reductions happen on the caller side in index
// order, so results are independent of the worker count.

namespace bindex::detail {

// hardware concurrency capped by the BINDEX_THREADS environment variable
int worker_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bindex::detail
