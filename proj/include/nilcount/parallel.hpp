#pragma once

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace nilcount {

// Worker count from NILCOUNT_WORKERS when set, otherwise the hardware
// concurrency clamped to [1, 8].
unsigned default_workers();

// Splits [begin, end) into one contiguous chunk per worker and combines the
// per-chunk results in chunk order, so the reduction is deterministic
// regardless of scheduling.
template <typename Result, typename ChunkFn, typename CombineFn>
Result parallel_reduce(std::uint64_t begin, std::uint64_t end, unsigned workers, Result init,
                       ChunkFn chunk_fn, CombineFn combine) {
  if (end <= begin) return init;
  const std::uint64_t total = end - begin;
  std::uint64_t w = workers == 0 ? 1 : workers;
  if (w > total) w = total;
  if (w == 1) return combine(std::move(init), chunk_fn(begin, end));

  std::vector<Result> parts(static_cast<std::size_t>(w));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(w));
  const std::uint64_t step = total / w;
  const std::uint64_t extra = total % w;
  std::uint64_t lo = begin;
  for (std::uint64_t i = 0; i < w; ++i) {
    const std::uint64_t hi = lo + step + (i < extra ? 1 : 0);
    threads.emplace_back([&parts, i, lo, hi, &chunk_fn] { parts[static_cast<std::size_t>(i)] = chunk_fn(lo, hi); });
    lo = hi;
  }
  for (auto& t : threads) t.join();
  Result acc = std::move(init);
  for (auto& part : parts) acc = combine(std::move(acc), std::move(part));
  return acc;
}

}  // namespace nilcount
