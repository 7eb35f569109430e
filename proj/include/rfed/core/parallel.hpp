#pragma once

#include <cstddef>
#include <functional>

namespace rfed {

// Worker count from RFED_WORKERS, falling back to hardware concurrency.
std::size_t worker_count();

// Runs body(i) for i in [0, n) across worker_count() threads. Each index is
// visited exactly once; the first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rfed
