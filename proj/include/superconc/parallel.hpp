#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace superconc {

/// Fixed logical decomposition of every estimator budget. Statistics depend
/// only on (seed, kLogicalShards), never on how many workers execute them.
inline constexpr int kLogicalShards = 64;

inline std::int64_t shard_size(std::int64_t total, int shard) {
  const std::int64_t base = total / kLogicalShards;
  return base + (shard < total % kLogicalShards ? 1 : 0);
}

/// Runs fn(shard) for shard = 0..kLogicalShards-1 on `workers` threads.
/// fn must write only to shard-indexed state; merge order is the caller's.
template <class Fn>
void for_each_shard(int workers, Fn&& fn) {
  if (workers <= 1) {
    for (int s = 0; s < kLogicalShards; ++s) fn(s);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int s = next.fetch_add(1);
      if (s >= kLogicalShards) return;
      fn(s);
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min(workers, kLogicalShards);
  pool.reserve(count);
  for (int i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace superconc
