#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ast {

// Error categories with distinct CLI exit codes (see README):
//   std::invalid_argument -> 1 (usage / bad parameters)
//   bound_error           -> 4 (resource bound exceeded)
//   io_error              -> 5 (I/O or malformed file)
struct bound_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Default seed for sampled verification; fixed so that repeated runs with
// identical configs produce byte-identical reports.
inline constexpr uint64_t default_sampling_seed = 0x5eed0001u;

// Default number of randomly sampled member triples per class in sampled
// regularity checks (the smallest class is always checked exhaustively).
inline constexpr uint32_t default_samples_per_class = 32;

// Resolve a requested worker count: 0 means "use hardware concurrency".
// The result is clamped to [1, work_items].
unsigned resolve_workers(unsigned requested, uint64_t work_items);

// Run fn(begin, end, slot) over [0, count) split into contiguous slices, one
// slice per worker.  Slice boundaries depend only on count and the resolved
// worker count; callers must merge per-slot results with order-insensitive
// operations (sum / min / logical-and) so that outputs do not depend on the
// worker count.  slot values are dense in [0, resolved_workers).
void parallel_slices(uint32_t count, unsigned workers,
                     const std::function<void(uint32_t, uint32_t, unsigned)>& fn);

}  // namespace ast
