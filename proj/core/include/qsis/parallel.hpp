#pragma once

#include <cstddef>
#include <functional>

namespace qsis {

/// Worker count: min(hardware, QSIS_THREADS) when the variable is set,
/// otherwise 1. Results never depend on it: parallel loops write into
/// per-index slots and reductions run serially in index order.
int thread_count();

/// Runs fn(i) for i in [0, n). fn must only touch state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qsis
