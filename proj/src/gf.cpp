#include "ast/gf.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ast/common.hpp"
#include "ast/conway.hpp"

namespace ast {
namespace {

// Base-p digit sum of two codes (coefficientwise addition of residues).
uint32_t add_digits(uint32_t a, uint32_t b, uint32_t p, uint32_t alpha) {
  uint32_t out = 0, scale = 1;
  for (uint32_t i = 0; i < alpha; ++i) {
    uint32_t da = a % p, db = b % p;
    out += ((da + db) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

}  // namespace

field_tower::field_tower(uint32_t p, uint32_t alpha, uint32_t omega)
    : p_(p), alpha_(alpha), omega_(omega) {
  uint64_t n64 = 1;
  for (uint32_t i = 0; i < alpha; ++i) n64 *= p;
  n_ = static_cast<uint32_t>(n64);
  q_ = 1;
  for (uint32_t i = 0; i < omega; ++i) q_ *= p;
  poly_ = conway_polynomial(p, alpha);

  // exp table: successive multiplication of the residue by x, reducing by the
  // monic modulus.  Residues are tracked directly as base-p packed codes.
  exp_.assign(n_ - 1, 0);
  log_.assign(n_, 0);
  std::vector<uint32_t> cur(alpha, 0);
  cur[0] = 1;
  std::vector<char> seen(n_, 0);
  for (uint32_t e = 0; e + 1 < n_; ++e) {
    uint32_t code = 0, scale = 1;
    for (uint32_t i = 0; i < alpha; ++i) {
      code += cur[i] * scale;
      scale *= p;
    }
    if (seen[code])
      throw std::logic_error("field generator is not primitive");
    seen[code] = 1;
    exp_[e] = code;
    log_[code] = e;
    // cur *= x
    uint32_t carry = cur[alpha - 1];
    for (uint32_t i = alpha; i-- > 1;) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (carry) {
      for (uint32_t i = 0; i < alpha; ++i)
        cur[i] = (cur[i] + (p - poly_[i] % p) * carry) % p;
    }
  }
  assert(exp_[0] == 1);

  if (n_ <= 256) {
    add_table_.assign(static_cast<size_t>(n_) * n_, 0);
    for (uint32_t a = 0; a < n_; ++a)
      for (uint32_t b = 0; b < n_; ++b)
        add_table_[static_cast<size_t>(a) * n_ + b] = add_digits(a, b, p, alpha);
  }
}

uint32_t field_tower::add(uint32_t a, uint32_t b) const {
  if (!add_table_.empty()) return add_table_[static_cast<size_t>(a) * n_ + b];
  return add_digits(a, b, p_, alpha_);
}

uint32_t field_tower::neg(uint32_t a) const {
  if (p_ == 2) return a;
  uint32_t out = 0, scale = 1, v = a;
  for (uint32_t i = 0; i < alpha_; ++i) {
    uint32_t d = v % p_;
    out += (d ? p_ - d : 0) * scale;
    v /= p_;
    scale *= p_;
  }
  return out;
}

uint32_t field_tower::mul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  uint64_t e = static_cast<uint64_t>(log_[a]) + log_[b];
  return exp_[e % (n_ - 1)];
}

uint32_t field_tower::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  uint32_t e = log_[a];
  return exp_[(n_ - 1 - e) % (n_ - 1)];
}

uint32_t field_tower::pow(uint32_t a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  uint64_t le = static_cast<uint64_t>(log_[a]) % (n_ - 1);
  return exp_[le * (e % (n_ - 1)) % (n_ - 1)];
}

uint32_t field_tower::frobenius(uint32_t a) const {
  if (a == 0) return 0;
  return exp_[static_cast<uint64_t>(log_[a]) * p_ % (n_ - 1)];
}

uint32_t field_tower::frobenius_iter(uint32_t a, uint32_t i) const {
  if (a == 0) return 0;
  uint64_t pi = 1;
  for (uint32_t t = 0; t < i; ++t) pi = pi * p_ % (n_ - 1);
  return exp_[static_cast<uint64_t>(log_[a]) * pi % (n_ - 1)];
}

uint32_t field_tower::log(uint32_t a) const {
  if (a == 0) throw std::domain_error("log of zero");
  return log_[a];
}

tower build_tower(uint32_t p, uint32_t alpha, uint32_t omega) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (alpha < 1 || omega < 1) throw std::invalid_argument("alpha and omega must be >= 1");
  if (alpha % omega != 0)
    throw std::invalid_argument("omega must divide alpha");
  uint64_t n64 = 1;
  for (uint32_t i = 0; i < alpha; ++i) {
    n64 *= p;
    if (n64 > (1u << 16))
      throw bound_error("field size p^alpha exceeds 2^16; not supported");
  }
  return std::make_shared<const field_tower>(p, alpha, omega);
}

galois_subgroup::galois_subgroup(tower tw) : t(std::move(tw)) {
  order = t->alpha() / t->omega();
}

uint32_t galois_subgroup::apply(uint32_t i, uint32_t a) const {
  return t->frobenius_iter(a, t->omega() * (i % order));
}

uint32_t degree_over_subfield(const galois_subgroup& h, uint32_t a) {
  uint32_t b = h.apply(1, a);
  uint32_t d = 1;
  while (b != a) {
    b = h.apply(1, b);
    ++d;
  }
  return d;
}

std::vector<uint32_t> h_orbit_values(const galois_subgroup& h, uint32_t a) {
  std::vector<uint32_t> vals{a};
  uint32_t b = h.apply(1, a);
  while (b != a) {
    vals.push_back(b);
    b = h.apply(1, b);
  }
  return vals;
}

transversal h_orbit_transversal(const galois_subgroup& h) {
  uint32_t n = h.t->n();
  transversal tr;
  tr.rep_of.assign(n, 0);
  std::vector<char> done(n, 0);
  for (uint32_t a = 0; a < n; ++a) {
    if (done[a]) continue;
    tr.representatives.push_back(a);
    for (uint32_t v : h_orbit_values(h, a)) {
      done[v] = 1;
      tr.rep_of[v] = a;
    }
  }
  return tr;
}

uint64_t burnside_orbit_count(uint32_t q, uint32_t r) {
  uint64_t sum = 0;
  for (uint32_t beta = 1; beta <= r; ++beta) {
    uint32_t g = std::gcd(r, beta);
    uint64_t term = 1;
    for (uint32_t i = 0; i < g; ++i) term *= q;
    sum += term;
  }
  assert(sum % r == 0);
  return sum / r;
}

}  // namespace ast
