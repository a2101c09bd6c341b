#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace renorm {

// Static slot assignment so results land in caller-owned storage and merges
// stay deterministic regardless of scheduling.
inline void parallel_for(int count, int threads,
                         const std::function<void(int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = std::min(threads, count);
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace renorm
