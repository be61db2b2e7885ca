#include "util.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace adsmax::util {

namespace {
int g_cap = 0;  // 0 = unset
}

int thread_cap() {
  if (g_cap > 0) return g_cap;
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap <= 0) cap = 1;
  if (const char* env = std::getenv("ADSMAX_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) cap = std::min(cap, v);
  }
  return cap;
}

void set_thread_cap(int cap) { g_cap = cap; }

void parallel_for(int64_t n, const std::function<void(int64_t)>& fn) {
  const int workers = std::min<int64_t>(thread_cap(), n);
  if (workers <= 1 || n < 128) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next(0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const int64_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

uint64_t fnv1a(const void* data, size_t size, uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace adsmax::util
