#include "ast/partition.hpp"

#include <stdexcept>

namespace ast {

void triple_partition::recompute_stats() {
  uint32_t maxl = 0;
  for (uint8_t l : labels)
    if (l > maxl) maxl = l;
  class_count = maxl + 1;
  class_sizes.assign(class_count, 0);
  first_triple.assign(class_count, labels.size());
  for (uint64_t i = 0; i < labels.size(); ++i) {
    uint8_t l = labels[i];
    ++class_sizes[l];
    if (first_triple[l] == labels.size()) first_triple[l] = i;
  }
  for (uint64_t s : class_sizes)
    if (s == 0) throw std::logic_error("empty class label in partition");
}

}  // namespace ast
