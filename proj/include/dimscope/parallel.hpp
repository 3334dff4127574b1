#pragma once

#include <cstddef>
#include <functional>

namespace dimscope {

/// Worker count: DIMSCOPE_THREADS if set and nonzero, else the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. The first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dimscope
