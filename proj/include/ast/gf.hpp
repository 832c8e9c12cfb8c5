#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace ast {

// Tower GF(p) <= GF(q) <= GF(n) with q = p^omega, n = p^alpha, omega | alpha.
// Elements of GF(n) are encoded as integers in [0, n): the base-p digits of
// the code are the coefficients (ascending degree) of the residue modulo the
// Conway polynomial C_{p,alpha}.  Encoding 0 is the zero element and encoding
// 1 is the multiplicative identity.  Because Conway polynomials form a
// norm-compatible system, the same encodings are consistent across the tower.
class field_tower {
 public:
  field_tower(uint32_t p, uint32_t alpha, uint32_t omega);

  uint32_t p() const { return p_; }
  uint32_t alpha() const { return alpha_; }
  uint32_t omega() const { return omega_; }
  uint32_t n() const { return n_; }  // p^alpha
  uint32_t q() const { return q_; }  // p^omega
  const std::vector<uint32_t>& polynomial() const { return poly_; }

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;  // a must be nonzero
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
  uint32_t pow(uint32_t a, uint64_t e) const;

  // A fixed generator of the multiplicative group: the class of x.
  uint32_t generator() const { return exp_[1 % (n_ - 1)]; }

  // a -> a^p, the absolute Frobenius.
  uint32_t frobenius(uint32_t a) const;
  // a -> a^{p^i}.
  uint32_t frobenius_iter(uint32_t a, uint32_t i) const;

  // Discrete log of a nonzero element with respect to generator().
  uint32_t log(uint32_t a) const;
  uint32_t exp(uint32_t e) const { return exp_[e % (n_ - 1)]; }

 private:
  uint32_t p_, alpha_, omega_, n_, q_;
  std::vector<uint32_t> poly_;       // C_{p,alpha}, ascending, size alpha+1
  std::vector<uint32_t> exp_;        // exp_[e] = g^e, size n-1
  std::vector<uint32_t> log_;        // log_[a] for a != 0; log_[0] unused
  std::vector<uint32_t> add_table_;  // n*n lookup when n <= 256, else empty
};

using tower = std::shared_ptr<const field_tower>;

// Validates arguments (p prime, omega >= 1, omega | alpha, p^alpha <= 2^16)
// and constructs the shared tower.  Throws std::invalid_argument or
// bound_error.
tower build_tower(uint32_t p, uint32_t alpha, uint32_t omega);

// The subgroup H = <x -> x^q> of Gal(GF(n)/GF(p)); cyclic of order alpha/omega
// with fixed field GF(q).
struct galois_subgroup {
  tower t;
  uint32_t order;  // alpha / omega

  explicit galois_subgroup(tower tw);

  // The i-th power of the generating automorphism applied to a: a^{q^i}.
  uint32_t apply(uint32_t i, uint32_t a) const;
};

// Size of the H-orbit of a, i.e. the degree [GF(q)(a) : GF(q)].
uint32_t degree_over_subfield(const galois_subgroup& h, uint32_t a);

// The orbit of a under H, starting at a, each step applying x -> x^q.
std::vector<uint32_t> h_orbit_values(const galois_subgroup& h, uint32_t a);

// Orbit decomposition of all of GF(n) under H.  Representatives are the
// minimal encodings of their orbits, listed in ascending order; rep_of maps
// each element to its orbit representative (rep_of[0] == 0).
struct transversal {
  std::vector<uint32_t> representatives;
  std::vector<uint32_t> rep_of;
};

transversal h_orbit_transversal(const galois_subgroup& h);

// Number of H-orbits on GF(n), by Burnside's lemma:
//   (1/r) * sum_{beta=1}^{r} q^gcd(r,beta)   with r = alpha/omega.
uint64_t burnside_orbit_count(uint32_t q, uint32_t r);

}  // namespace ast
