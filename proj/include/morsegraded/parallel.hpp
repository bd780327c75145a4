#pragma once

#include <cstddef>
#include <functional>

namespace mg {

// Worker count from MORSEGRADED_THREADS, defaulting to the hardware count.
std::size_t worker_count();

// Runs body(i) for i in [0, n); rethrows the first exception.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mg
