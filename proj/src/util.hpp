#pragma once

#include <cstdint>
#include <functional>

namespace adsmax::util {

// worker cap: min(hardware, ADSMAX_THREADS env); set_thread_cap(1) is the
// deterministic reference mode (results are index-addressed and identical
// either way, the cap only controls scheduling)
int thread_cap();
void set_thread_cap(int cap);

void parallel_for(int64_t n, const std::function<void(int64_t)>& fn);

uint64_t fnv1a(const void* data, size_t size, uint64_t seed = 1469598103934665603ull);

}  // namespace adsmax::util
