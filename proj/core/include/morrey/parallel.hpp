#pragma once

#include <cstdint>
#include <functional>

namespace morrey {

/// Number of worker threads: min(hardware_concurrency, MORREY_THREADS).
int max_threads();

/// Runs fn over [0, count) split into fixed-size chunks. Chunk boundaries do
/// not depend on the thread count, so chunked reductions are deterministic.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

/// Chunked sum of map(begin, end) partials, combined in chunk order.
double parallel_sum(std::int64_t count,
                    const std::function<double(std::int64_t, std::int64_t)>& map);

}  // namespace morrey
