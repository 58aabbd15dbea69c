#include "morrey/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace morrey {

int max_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("MORREY_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (count <= 0) return;
  int threads = max_threads();
  if (threads == 1 || count < 4096) {
    fn(0, count);
    return;
  }
  const std::int64_t chunk = std::max<std::int64_t>(4096, count / (threads * 8));
  const std::int64_t n_chunks = (count + chunk - 1) / chunk;
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) break;
      fn(c * chunk, std::min(count, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

double parallel_sum(std::int64_t count,
                    const std::function<double(std::int64_t, std::int64_t)>& map) {
  if (count <= 0) return 0.0;
  const std::int64_t chunk = 8192;
  const std::int64_t n_chunks = (count + chunk - 1) / chunk;
  std::vector<double> partial(static_cast<std::size_t>(n_chunks), 0.0);
  parallel_for(n_chunks, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t c = lo; c < hi; ++c)
      partial[static_cast<std::size_t>(c)] =
          map(c * chunk, std::min(count, (c + 1) * chunk));
  });
  double total = 0.0;
  for (double x : partial) total += x;
  return total;
}

}  // namespace morrey
