#pragma once

#include <cstdint>
#include <vector>

namespace ast {

bool is_prime(uint32_t m);

// Smallest primitive root modulo the prime p (p == 2 gives 1).
uint32_t smallest_primitive_root(uint32_t p);

// The Conway polynomial C_{p,m}: the lexicographically least monic primitive
// polynomial of degree m over GF(p) that is norm-compatible with C_{p,d} for
// every proper divisor d of m.  "Lexicographically least" uses the standard
// word order: f = x^m + a_{m-1}x^{m-1} + ... + a_0 is identified with the
// word (w_{m-1}, ..., w_0), w_i = (-1)^{m-i} a_i mod p, compared from the
// highest-degree coefficient down.  Computed values therefore agree with the
// published Conway polynomial tables (e.g. Frank Luebeck's list); the entries
// used by the test matrix are pinned in tests/test_conway.cpp.
//
// Coefficients are returned by ascending degree (size m+1, leading 1).
// Supported range: p prime, p^m <= 2^16; out of range raises bound_error.
std::vector<uint32_t> conway_polynomial(uint32_t p, uint32_t m);

}  // namespace ast
