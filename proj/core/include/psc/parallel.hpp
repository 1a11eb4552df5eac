#pragma once

#include <cstddef>
#include <functional>

namespace psc {

/// Worker count: the WORKERS environment variable when set to a positive
/// integer, otherwise std::thread::hardware_concurrency().
unsigned worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads using static
/// contiguous chunks. Each index must write only to its own output slot;
/// reductions are done by the caller in index order so results do not depend
/// on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace psc
