#pragma once

#include <cstddef>
#include <functional>

namespace nluq {

/// Runs fn(i) for i in [0, n). threads <= 1 runs inline. Work items must be
/// independent; results written by index stay deterministic regardless of
/// thread count. The first exception thrown by any item is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace nluq
