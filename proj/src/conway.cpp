#include "ast/conway.hpp"

#include <cassert>
#include <map>
#include <mutex>

#include "ast/common.hpp"

namespace ast {
namespace {

constexpr uint64_t field_size_bound = 1u << 16;

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<uint32_t> prime_factors(uint64_t v) {
  std::vector<uint32_t> fs;
  for (uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      fs.push_back(static_cast<uint32_t>(d));
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) fs.push_back(static_cast<uint32_t>(v));
  return fs;
}

// Residues mod a fixed monic f of degree m over GF(p), stored as coefficient
// vectors of length m (ascending degree).
struct modring {
  uint32_t p, m;
  const std::vector<uint32_t>& f;  // size m+1, monic

  using poly = std::vector<uint32_t>;

  poly x() const {
    poly r(m, 0);
    if (m > 1)
      r[1] = 1;
    else
      r[0] = (p - f[0]) % p;  // x = -f0 mod (x + f0)
    return r;
  }

  poly one() const {
    poly r(m, 0);
    r[0] = 1 % p;
    return r;
  }

  bool is_zero(const poly& a) const {
    for (uint32_t c : a)
      if (c) return false;
    return true;
  }

  poly mul(const poly& a, const poly& b) const {
    std::vector<uint64_t> t(2 * m - 1, 0);
    for (uint32_t i = 0; i < m; ++i) {
      if (!a[i]) continue;
      for (uint32_t j = 0; j < m; ++j) t[i + j] += static_cast<uint64_t>(a[i]) * b[j];
    }
    for (uint32_t i = 0; i < t.size(); ++i) t[i] %= p;
    for (uint32_t i = 2 * m - 2; i >= m; --i) {
      uint64_t c = t[i];
      if (c) {
        // subtract c * f * x^{i-m}
        for (uint32_t j = 0; j <= m; ++j) {
          uint64_t& cell = t[i - m + j];
          cell = (cell + static_cast<uint64_t>(p) * c - c * f[j] % p) % p;
        }
      }
      if (i == m) break;
    }
    poly r(m);
    for (uint32_t i = 0; i < m; ++i) r[i] = static_cast<uint32_t>(t[i]);
    return r;
  }

  poly pow(poly b, uint64_t e) const {
    poly r = one();
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
};

// Generic polynomial helpers over GF(p) (vectors by ascending degree, no
// normalization requirements).
int degree(const std::vector<uint32_t>& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

uint32_t inv_mod_p(uint32_t a, uint32_t p) {
  return static_cast<uint32_t>(powmod_u64(a, p - 2, p));
}

// a mod b over GF(p); b must be nonzero.
std::vector<uint32_t> poly_mod(std::vector<uint32_t> a, const std::vector<uint32_t>& b,
                               uint32_t p) {
  int db = degree(b);
  assert(db >= 0);
  uint32_t binv = inv_mod_p(b[db], p);
  for (int da = degree(a); da >= db; da = degree(a)) {
    uint32_t c = static_cast<uint32_t>(static_cast<uint64_t>(a[da]) * binv % p);
    for (int j = 0; j <= db; ++j) {
      uint64_t cell = a[da - db + j] + static_cast<uint64_t>(p) -
                      static_cast<uint64_t>(c) * b[j] % p;
      a[da - db + j] = static_cast<uint32_t>(cell % p);
    }
  }
  return a;
}

// gcd of polynomials over GF(p); result monic (or zero polynomial).
std::vector<uint32_t> poly_gcd(std::vector<uint32_t> a, std::vector<uint32_t> b, uint32_t p) {
  while (degree(b) >= 0) {
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  int d = degree(a);
  if (d >= 0) {
    uint32_t c = inv_mod_p(a[d], p);
    for (auto& v : a) v = static_cast<uint32_t>(static_cast<uint64_t>(v) * c % p);
  }
  return a;
}

bool is_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
  uint32_t m = static_cast<uint32_t>(f.size()) - 1;
  modring R{p, m, f};
  if (m == 1) return true;
  // x^{p^i} mod f for i = 1..m
  auto u = R.x();
  std::vector<modring::poly> frob_pow(m + 1);
  for (uint32_t i = 1; i <= m; ++i) {
    u = R.pow(u, p);
    frob_pow[i] = u;
  }
  // x^{p^m} == x
  {
    auto diff = frob_pow[m];
    auto xr = R.x();
    for (uint32_t i = 0; i < m; ++i) diff[i] = (diff[i] + p - xr[i]) % p;
    if (!R.is_zero(diff)) return false;
  }
  // gcd(x^{p^{m/r}} - x, f) == 1 for every prime r | m
  for (uint32_t r : prime_factors(m)) {
    auto diff = frob_pow[m / r];
    auto xr = R.x();
    std::vector<uint32_t> d(m + 1, 0);
    for (uint32_t i = 0; i < m; ++i) d[i] = (diff[i] + p - xr[i]) % p;
    auto g = poly_gcd(d, f, p);
    if (degree(g) != 0) return false;
  }
  return true;
}

// f irreducible of degree m: true iff x generates the multiplicative group.
bool is_primitive(const std::vector<uint32_t>& f, uint32_t p) {
  uint32_t m = static_cast<uint32_t>(f.size()) - 1;
  modring R{p, m, f};
  uint64_t order = powmod_u64(p, m, ~0ull);  // p^m fits: p^m <= 2^16
  uint64_t r = 1;
  for (uint32_t i = 0; i < m; ++i) r *= p;
  r -= 1;
  (void)order;
  for (uint32_t s : prime_factors(r)) {
    auto v = R.pow(R.x(), r / s);
    auto o = R.one();
    bool eq = true;
    for (uint32_t i = 0; i < m; ++i)
      if (v[i] != o[i]) {
        eq = false;
        break;
      }
    if (eq) return false;
  }
  return true;
}

std::vector<uint32_t> conway_impl(uint32_t p, uint32_t m);

// C_{p,d}(x^{(p^m-1)/(p^d-1)}) == 0 (mod f) for every proper divisor d of m.
bool is_compatible(const std::vector<uint32_t>& f, uint32_t p) {
  uint32_t m = static_cast<uint32_t>(f.size()) - 1;
  modring R{p, m, f};
  for (uint32_t d = 1; d < m; ++d) {
    if (m % d) continue;
    uint64_t pm = 1, pd = 1;
    for (uint32_t i = 0; i < m; ++i) pm *= p;
    for (uint32_t i = 0; i < d; ++i) pd *= p;
    uint64_t e = (pm - 1) / (pd - 1);
    auto cd = conway_impl(p, d);
    auto y = R.pow(R.x(), e);
    // Horner evaluation of cd at y
    auto acc = R.one();
    for (uint32_t i = 0; i < m; ++i) acc[i] = 0;
    for (int i = static_cast<int>(d); i >= 0; --i) {
      acc = R.mul(acc, y);
      acc[0] = (acc[0] + cd[i]) % p;
    }
    if (!R.is_zero(acc)) return false;
  }
  return true;
}

std::vector<uint32_t> conway_impl(uint32_t p, uint32_t m) {
  static std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({p, m});
    if (it != cache.end()) return it->second;
  }

  std::vector<uint32_t> result;
  if (m == 1) {
    uint32_t g = smallest_primitive_root(p);
    result = {(p - g % p) % p, 1};  // x - g
  } else {
    uint64_t total = 1;
    for (uint32_t i = 0; i < m; ++i) total *= p;
    // scan candidate words (w_{m-1},...,w_0) in ascending lexicographic order
    for (uint64_t idx = 0; idx < total; ++idx) {
      if (idx % p == 0) continue;  // w_0 == 0 => constant term 0
      std::vector<uint32_t> f(m + 1, 0);
      f[m] = 1;
      uint64_t t = idx;
      for (uint32_t i = 0; i < m; ++i) {
        uint32_t w = static_cast<uint32_t>(t % p);
        t /= p;
        f[i] = ((m - i) % 2 == 0) ? w : (p - w) % p;  // a_i = (-1)^{m-i} w_i
      }
      if (!is_irreducible(f, p)) continue;
      if (!is_primitive(f, p)) continue;
      if (!is_compatible(f, p)) continue;
      result = f;
      break;
    }
    if (result.empty()) throw std::logic_error("conway polynomial search exhausted");
  }

  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(std::make_pair(p, m), result);
  return result;
}

}  // namespace

bool is_prime(uint32_t m) {
  if (m < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

uint32_t smallest_primitive_root(uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  if (p == 2) return 1;
  auto fs = prime_factors(p - 1);
  for (uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (uint32_t s : fs) {
      if (powmod_u64(g, (p - 1) / s, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

std::vector<uint32_t> conway_polynomial(uint32_t p, uint32_t m) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  if (m == 0) throw std::invalid_argument("degree must be positive");
  uint64_t n = 1;
  for (uint32_t i = 0; i < m; ++i) {
    n *= p;
    if (n > field_size_bound)
      throw bound_error("field size p^alpha exceeds the supported bound 2^16");
  }
  return conway_impl(p, m);
}

}  // namespace ast
