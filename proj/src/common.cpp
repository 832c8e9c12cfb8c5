#include "ast/common.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace ast {

unsigned resolve_workers(unsigned requested, uint64_t work_items) {
  unsigned w = requested;
  if (w == 0) {
    w = std::thread::hardware_concurrency();
    if (w == 0) w = 1;
  }
  if (work_items < 1) work_items = 1;
  if (static_cast<uint64_t>(w) > work_items) w = static_cast<unsigned>(work_items);
  return std::max(1u, w);
}

void parallel_slices(uint32_t count, unsigned workers,
                     const std::function<void(uint32_t, uint32_t, unsigned)>& fn) {
  unsigned w = resolve_workers(workers, count);
  if (w <= 1) {
    fn(0, count, 0);
    return;
  }
  uint32_t chunk = (count + w - 1) / w;
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (unsigned slot = 0; slot < w; ++slot) {
    uint32_t begin = slot * chunk;
    uint32_t end = std::min(count, begin + chunk);
    if (begin > end) begin = end;
    threads.emplace_back([&fn, begin, end, slot] { fn(begin, end, slot); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace ast
