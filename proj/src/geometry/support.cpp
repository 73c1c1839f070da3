#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <vector>

#include "unitaylor/numeric.hpp"
#include "unitaylor/parallel.hpp"

namespace unitaylor {

std::string to_decimal(const HiReal& x) {
  return x.str(std::numeric_limits<HiReal>::max_digits10, std::ios_base::scientific);
}

HiReal from_decimal(const std::string& text) { return HiReal(text); }

std::size_t worker_count() {
  if (const char* env = std::getenv("UNITAYLOR_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace unitaylor
