#pragma once

#include <cstddef>
#include <functional>

namespace fillinglab {

// Worker cap: FILLING_LAB_THREADS if set (minimum 1), else hardware threads.
unsigned worker_count();

// Runs fn(i) for i in [0, n) across workers. Iterations must be independent;
// callers precompute any RNG-derived inputs so results do not depend on the
// schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace fillinglab
