#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ast/action.hpp"
#include "ast/partition.hpp"
#include "ast/verify.hpp"

namespace ast {

// Names for relation classes.  Nontrivial classes of the k=2 schemes come in
// two families indexed by orbit representatives of the multiplicative action
// of H: R^a is the class of (0, e0, a*e0) for a transversal rep a != 0,1, and
// ^aR is the class of (0, e0, a*e1) for a rep a != 0.  For k >= 3 everything
// outside the line spanned by e0 collapses into one big class.
struct relation_name {
  enum class kind : uint8_t { trivial, type1, type2, big, unnamed };
  kind family = kind::unnamed;
  uint32_t value = 0;  // trivial: class id 0..3; type1/type2: element code; big/unnamed: class id

  std::string str() const;
};

struct name_table {
  std::vector<relation_name> of_class;       // class id -> name
  bool bijective = true;                     // every class named exactly once
  std::map<uint32_t, uint16_t> type1_class;  // rep code -> class id
  std::map<uint32_t, uint16_t> type2_class;  // rep code -> class id
  int32_t big_class = -1;                    // k >= 3 only
};

// Matches names to classes of a brute-force partition by labeling the
// defining representative triples.
name_table build_name_table(const group_spec& g, const triple_partition& tp);

struct count_prediction {
  uint64_t type1 = 0;
  uint64_t type2 = 0;  // k = 2 only
  bool big = false;    // k >= 3 only
  uint64_t nontrivial = 0;
};

// Predicted class counts from the Burnside orbit count B of H on GF(n):
// k = 2 has B-2 type-1 and B-1 type-2 classes; k >= 3 has B-2 type-1 classes
// plus the big class.
count_prediction predict_relation_counts(const group_spec& g);

// Predicted third valency: deg(a) over GF(q) for R^a, n * deg(a) for ^aR,
// n^k - n for the big class.  Trivial names are rejected.
uint64_t predict_third_valency(const group_spec& g, const relation_name& name);

// A predicted coefficient vector for a product of three adjacency
// hypermatrices, expanded over every class id (implied zeros included).
// covered == false means no closed form applies and by_class is empty.
struct product_prediction {
  bool covered = false;
  int item = 0;  // 1..6 three-nontrivial items, 101..105 one-trivial items
  std::vector<uint64_t> by_class;
};

// Product of three nontrivial classes; the operand kind pattern selects the
// formula (type1^3; one type2 anywhere -> zero; one type1 in slot 3/2/1 with
// two type2; type2^3).  Throws std::invalid_argument on a trivial operand.
product_prediction predict_nontrivial_product(const group_spec& g,
                                              const name_table& nt,
                                              const relation_name& a,
                                              const relation_name& b,
                                              const relation_name& c);

// Product with exactly one trivial operand.  Covered patterns put the
// trivial class in its own slot (class 1 in slot 1, 2 in slot 2, 3 in
// slot 3); the two nontrivial operands are both type-1 (scalar formulas),
// mixed (zero), or both type-2 (q-scaled count).  Anything else (class 0,
// off-slot trivial, two trivials) is not covered.
product_prediction predict_one_trivial_product(const group_spec& g,
                                               const name_table& nt,
                                               const relation_name& a,
                                               const relation_name& b,
                                               const relation_name& c);

struct crosscheck_line {
  std::string quantity;
  std::string predicted;
  std::string actual;
  bool match = true;
  std::string source;
};

struct crosscheck_report {
  bool clean = true;  // every line matches
  std::vector<crosscheck_line> lines;
};

// Compares the brute-force partition of an asl spec against every
// closed-form prediction: verifier conditions, name bijection, class counts,
// third valencies, and (k = 2) every covered product coefficient.  Product
// mismatches are revalidated by a full-class sweep and the oracle agreement
// is reported under source "second-oracle".  For k >= 3 the agl partition is
// built and compared for equality.  Mismatches never throw; they clear
// `clean`.  The one-argument form builds the partition itself.
crosscheck_report run_crosscheck(const group_spec& g, const triple_partition& tp,
                                 unsigned workers = 0);
crosscheck_report run_crosscheck(const group_spec& g, unsigned workers = 0);

}  // namespace ast
