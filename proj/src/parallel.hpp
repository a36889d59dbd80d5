#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace sepsys::detail {

inline unsigned worker_count(uint64_t units, uint64_t min_chunk) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (hw > 8) hw = 8;
  uint64_t by_work = min_chunk == 0 ? hw : units / min_chunk;
  if (by_work < 1) by_work = 1;
  return static_cast<unsigned>(std::min<uint64_t>(hw, by_work));
}

// Partition [0, n) into contiguous unit ranges and scan them concurrently.
// scan(begin, end, best) must return the first hit within its range (as
// (unit, value), units increasing) and may stop early once best, a shared
// upper bound on the winning unit, falls below its range. The overall result
// is the hit with the smallest unit — identical to a sequential scan.
template <class V>
std::optional<std::pair<uint64_t, V>> chunked_first_hit(
    uint64_t n, uint64_t min_chunk,
    const std::function<std::optional<std::pair<uint64_t, V>>(
        uint64_t, uint64_t, std::atomic<uint64_t>&)>& scan) {
  std::atomic<uint64_t> best{~uint64_t{0}};
  const unsigned workers = worker_count(n, min_chunk);
  if (workers <= 1) {
    return scan(0, n, best);
  }
  std::vector<std::future<std::optional<std::pair<uint64_t, V>>>> futs;
  futs.reserve(workers);
  const uint64_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const uint64_t b = std::min<uint64_t>(n, uint64_t{w} * chunk);
    const uint64_t e = std::min<uint64_t>(n, b + chunk);
    futs.push_back(std::async(std::launch::async, [&, b, e] {
      auto r = scan(b, e, best);
      if (r) {
        uint64_t cur = best.load();
        while (r->first < cur && !best.compare_exchange_weak(cur, r->first)) {
        }
      }
      return r;
    }));
  }
  std::optional<std::pair<uint64_t, V>> out;
  for (auto& f : futs) {
    auto r = f.get();
    if (r && (!out || r->first < out->first)) out = std::move(r);
  }
  return out;
}

}  // namespace sepsys::detail
