#pragma once

#include <cstdint>
#include <vector>

namespace ast {

// A partition of Omega^3 into labeled classes, with Omega = {0, ..., N-1}.
// Labels are bytes; classes 0..3 are reserved for the diagonal classes
//   0: (x,x,x)   1: (x,y,y), x!=y   2: (y,x,y), x!=y   3: (y,y,x), x!=y
// and labels >= 4 are the nontrivial classes.
struct triple_partition {
  uint32_t omega_size = 0;
  uint32_t class_count = 0;
  std::vector<uint8_t> labels;       // size N^3, indexed by x*N^2 + y*N + z
  std::vector<uint64_t> class_sizes;  // size class_count
  std::vector<uint64_t> first_triple;  // least index carrying each label

  uint64_t index(uint32_t x, uint32_t y, uint32_t z) const {
    uint64_t n = omega_size;
    return (static_cast<uint64_t>(x) * n + y) * n + z;
  }
  uint8_t label(uint32_t x, uint32_t y, uint32_t z) const {
    return labels[index(x, y, z)];
  }

  // Rebuilds class_sizes and first_triple from labels (single pass).
  void recompute_stats();
};

// Label a diagonal-pattern triple: 0..3 as above, or -1 if (x,y,z) has three
// distinct entries.
inline int trivial_pattern(uint32_t x, uint32_t y, uint32_t z) {
  if (x == y) return z == x ? 0 : 3;
  if (z == y) return 1;
  if (z == x) return 2;
  return -1;
}

}  // namespace ast
