#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ast/gf.hpp"
#include "ast/partition.hpp"

namespace ast {

enum class variant : uint8_t { asl = 0, agl = 1 };

const char* variant_name(variant v);
variant variant_from_name(const std::string& s);

// GF(n)^k with little-endian integer encoding: code = sum_i coords[i] * n^i.
// The zero vector has code 0 and the first standard basis vector has code 1.
struct vector_space {
  tower t;
  uint32_t k = 0;
  uint64_t size = 0;  // n^k

  std::vector<uint32_t> decode(uint32_t code) const;
  uint32_t encode(const std::vector<uint32_t>& coords) const;
  uint32_t vadd(uint32_t a, uint32_t b) const;
  uint32_t vsub(uint32_t a, uint32_t b) const;
};

// Affine semilinear map v -> A * phi(v) + b, phi = frob-th power of the
// absolute Frobenius applied coordinatewise.
struct semilinear_map {
  uint32_t k = 0;
  std::vector<uint32_t> mat;    // row-major k x k
  std::vector<uint32_t> trans;  // size k
  uint32_t frob = 0;

  static semilinear_map identity(uint32_t k);
};

uint32_t map_apply(const vector_space& s, const semilinear_map& m, uint32_t v);
// Composition a after b: (a*b)(v) = a(b(v)).
semilinear_map map_compose(const vector_space& s, const semilinear_map& a,
                           const semilinear_map& b);
std::vector<uint32_t> map_perm_table(const vector_space& s, const semilinear_map& m);

uint32_t matrix_det(const field_tower& f, std::vector<uint32_t> mat, uint32_t k);
// Throws std::domain_error on a singular matrix.
std::vector<uint32_t> matrix_inverse(const field_tower& f, std::vector<uint32_t> mat,
                                     uint32_t k);

// The acting group: ASL_H(k, n) (matrices of determinant 1) or AGL_H(k, n),
// together with the field tower fixing H = Gal(GF(n)/GF(q)).
struct group_spec {
  variant var;
  uint32_t k;
  tower t;
  galois_subgroup gal;
  vector_space space;
};

group_spec make_spec(uint32_t p, uint32_t alpha, uint32_t omega, uint32_t k,
                     variant var);

// Generators: transvections over a GF(p)-basis of GF(n), translations by the
// standard basis vectors, the generator of H when H is nontrivial, and for
// the agl variant one diagonal scaling.
std::vector<semilinear_map> group_generators(const group_spec& g);

// Generators of the stabilizer of the base pair (zero vector, first standard
// basis vector): the transvections not touching column 0, the generator of H,
// and for agl the diagonal scaling in position (1,1).
std::vector<semilinear_map> two_point_stabilizer_generators(const group_spec& g);

// Every element of the two-point stabilizer, enumerated structurally as
// v -> A phi(v) with A = [[1, r^T], [0, B]] (first column fixed), B running
// over SL(k-1, n) (resp. GL for agl), r over GF(n)^{k-1}, phi over H.  Each
// element appears exactly once.  Throws bound_error when the enumeration
// would be too large.
std::vector<semilinear_map> two_point_stabilizer_elements(const group_spec& g);

// BFS closure of a set of permutations of {0..N-1} under composition.
// Throws bound_error if the generated group exceeds max_size elements.
std::vector<std::vector<uint32_t>> closure_perms(
    const std::vector<std::vector<uint32_t>>& gens, uint64_t max_size);

// Orbits of the two-point stabilizer on the point set.  Points 0 and 1 are
// fixed by the stabilizer and carry sentinel labels -1 and -2; the remaining
// orbits get ids 0.. in order of ascending minimal member.
struct stabilizer_orbits {
  std::vector<int32_t> label;
  uint32_t count = 0;
  std::vector<uint64_t> sizes;
  std::vector<uint32_t> min_member;
};

stabilizer_orbits compute_stabilizer_orbits(const group_spec& g);

// A group element sending x to 0 and y to the first basis vector (x != y):
// v -> A(v - x) with det A = 1, so it lies in both variants.
semilinear_map transporter_to_base(const group_spec& g, uint32_t x, uint32_t y);

// Labels all of Omega^3 by group orbit: diagonal classes 0..3, nontrivial
// classes 4.. in stabilizer-orbit order.  Each triple (x,y,z) with x != y is
// labeled by transporting (x,y) to the base pair and reading the stabilizer
// orbit of the image of z.  Requires N <= 256.
triple_partition label_all_triples(const group_spec& g, unsigned workers = 0);

// Independent ground truth: direct BFS orbit computation on Omega^3 under the
// group generators, then canonical relabeling (diagonal patterns to 0..3,
// nontrivial orbits by ascending least w with (0,1,w) in the orbit).  Agrees
// byte-for-byte with label_all_triples when both are correct.  Requires
// N <= 64.
triple_partition bfs_orbit_oracle(const group_spec& g);

}  // namespace ast
