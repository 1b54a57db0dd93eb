#pragma once

#include <cstddef>
#include <functional>

namespace okvalid {

// Worker count: hardware concurrency, capped by OKVALID_THREADS when set.
int thread_count();

// Runs body(i) for i in [0, n). Iterations are distributed in contiguous
// blocks; each body must write only its own outputs so results do not depend
// on the schedule. Calls made from inside a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace okvalid
