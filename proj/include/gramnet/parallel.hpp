#pragma once

#include <cstddef>
#include <functional>

namespace gramnet {

// Runs fn(0..count-1) across worker threads (0 threads = hardware count).
// Rethrows the first exception after all workers finish. Work items must
// not depend on execution order.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace gramnet
