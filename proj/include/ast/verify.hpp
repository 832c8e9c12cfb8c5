#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ast/common.hpp"
#include "ast/partition.hpp"

namespace ast {

struct valencies {
  uint64_t n1 = 0, n2 = 0, n3 = 0;
};

// Valency table for the reference pair (0, 1): per class, the number of
// completions in each slot.  n1[i] counts w with (w,0,1) in class i, n2[i]
// counts (0,w,1), n3[i] counts (0,1,w).
std::vector<valencies> reference_valencies(const triple_partition& tp);

struct valency_result {
  bool pass = true;
  std::vector<valencies> per_class;
  bool has_witness = false;
  uint32_t witness_x = 0, witness_y = 0;
  int witness_direction = 0;  // 1, 2, or 3
  uint16_t witness_class = 0;
  uint64_t expected = 0, got = 0;
};

// Checks that all three directional completion counts are constant over every
// ordered pair of distinct points.
valency_result verify_valency_condition(const triple_partition& tp,
                                        unsigned workers = 0);

struct intersection_entry {
  uint16_t i = 0, j = 0, k = 0, l = 0;
  uint64_t p = 0;
};

// The nonzero intersection numbers read off one representative triple per
// class (the least triple index): for (x,y,z) in class l, entry (i,j,k,l,p)
// records the number p of w with (w,y,z) in i, (x,w,z) in j, (x,y,w) in k.
// Sorted by (i,j,k,l).
std::vector<intersection_entry> reference_intersection_numbers(
    const triple_partition& tp);

enum class regularity_mode { full, sampled };

struct regularity_options {
  regularity_mode mode = regularity_mode::full;
  uint64_t seed = default_sampling_seed;
  uint32_t samples_per_class = default_samples_per_class;
  unsigned workers = 0;
};

struct regularity_result {
  bool pass = true;
  std::vector<intersection_entry> numbers;
  uint64_t checked_triples = 0;
  bool has_witness = false;
  uint64_t witness_triple = 0;
  uint16_t witness_i = 0, witness_j = 0, witness_k = 0;
  uint64_t expected = 0, got = 0;
};

// Checks that the per-triple w-count histogram over (i,j,k) is constant on
// each class.  Mode full sweeps every triple; mode sampled sweeps every
// triple of the smallest class plus a seeded reservoir sample of the others.
regularity_result verify_principal_regularity(const triple_partition& tp,
                                              const regularity_options& opt = {});

// Full sweep of one class: verifies the histogram is constant across the
// class and returns the (i,j,k) -> p map as entries with this l.  Used to
// revalidate individual intersection numbers independently of the
// representative-based table.
struct class_histogram_result {
  bool constant = true;
  uint64_t first_deviation = 0;  // triple index, valid when !constant
  std::vector<intersection_entry> numbers;
};
class_histogram_result class_intersection_histogram(const triple_partition& tp,
                                                    uint16_t l,
                                                    unsigned workers = 0);

// The six coordinate permutations; the image of triple t under perm P is
// (t[P[0]], t[P[1]], t[P[2]]).
extern const std::array<std::array<int, 3>, 6> s3_perms;

struct s3_result {
  bool pass = true;
  std::vector<std::vector<uint8_t>> maps;  // per perm, class -> image class
  bool has_witness = false;
  int witness_perm = 0;
  uint64_t witness_triple = 0;
};

// Checks that every coordinate permutation maps classes onto classes; the
// candidate class maps are read off representatives and then swept.
s3_result verify_s3_closure(const triple_partition& tp, unsigned workers = 0);

struct trivial_result {
  bool pass = true;
  bool has_witness = false;
  uint64_t witness_triple = 0;
};

// Checks labels 0..3 are exactly the diagonal patterns.
trivial_result verify_trivial_relations(const triple_partition& tp,
                                        unsigned workers = 0);

enum class compare_verdict { equal, a_refines_b, b_refines_a, incomparable };

const char* verdict_name(compare_verdict v);

struct compare_result {
  compare_verdict verdict = compare_verdict::equal;
  // Least triple indices witnessing that an a-class spans two b-classes and
  // conversely; -1 when no such witness.
  int64_t witness_a = -1, witness_b = -1;
};

compare_result compare_partitions(const triple_partition& a,
                                  const triple_partition& b);

}  // namespace ast
