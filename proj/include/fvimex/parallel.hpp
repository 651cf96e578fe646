#pragma once

#include <cstddef>
#include <functional>

namespace fvimex {

/// Worker count: hardware concurrency capped by PDE_IMEX_THREADS when set.
unsigned worker_threads();

/// Runs body(begin, end) over disjoint chunks of [0, n). Exceptions thrown by
/// any chunk are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fvimex
