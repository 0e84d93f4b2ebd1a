#pragma once

#include <functional>

namespace specflow {

/// Worker count: hardware concurrency, capped by the SPECFLOW_THREADS
/// environment variable when set.
int thread_budget();

/// Runs fn(i) for i in [begin, end) on the thread budget. Falls back to a
/// plain loop for small ranges.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

}  // namespace specflow
