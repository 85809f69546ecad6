#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace orbitope {

/// Worker cap: ORBITOPE_THREADS if set, otherwise hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("ORBITOPE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Runs fn(block) for block = 0..nblocks-1 on up to thread_count() workers and
/// returns the results in block order, so any reduction over them is
/// deterministic regardless of scheduling.
template <class R>
std::vector<R> map_blocks(std::uint64_t nblocks, const std::function<R(std::uint64_t)>& fn) {
  std::vector<R> out(nblocks);
  const int workers = std::min<std::uint64_t>(thread_count(), nblocks ? nblocks : 1);
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) out[b] = fn(b);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t b = w; b < nblocks; b += workers) out[b] = fn(b);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace orbitope
