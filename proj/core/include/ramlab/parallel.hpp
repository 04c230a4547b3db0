#pragma once

#include <cstddef>
#include <functional>

namespace ramlab {

// Worker count: RAMLAB_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

// Runs body(i) for i in [0, count). Iterations must be independent; each
// index is visited exactly once. Exceptions from workers are rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ramlab
