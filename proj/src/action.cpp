#include "ast/action.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

#include "ast/common.hpp"

namespace ast {

const char* variant_name(variant v) { return v == variant::asl ? "asl" : "agl"; }

variant variant_from_name(const std::string& s) {
  if (s == "asl") return variant::asl;
  if (s == "agl") return variant::agl;
  throw std::invalid_argument("unknown variant: " + s);
}

std::vector<uint32_t> vector_space::decode(uint32_t code) const {
  std::vector<uint32_t> coords(k);
  uint32_t n = t->n();
  for (uint32_t i = 0; i < k; ++i) {
    coords[i] = code % n;
    code /= n;
  }
  return coords;
}

uint32_t vector_space::encode(const std::vector<uint32_t>& coords) const {
  uint32_t n = t->n();
  uint64_t code = 0, scale = 1;
  for (uint32_t i = 0; i < k; ++i) {
    code += static_cast<uint64_t>(coords[i]) * scale;
    scale *= n;
  }
  return static_cast<uint32_t>(code);
}

uint32_t vector_space::vadd(uint32_t a, uint32_t b) const {
  uint32_t n = t->n();
  uint64_t code = 0, scale = 1;
  for (uint32_t i = 0; i < k; ++i) {
    code += static_cast<uint64_t>(t->add(a % n, b % n)) * scale;
    a /= n;
    b /= n;
    scale *= n;
  }
  return static_cast<uint32_t>(code);
}

uint32_t vector_space::vsub(uint32_t a, uint32_t b) const {
  uint32_t n = t->n();
  uint64_t code = 0, scale = 1;
  for (uint32_t i = 0; i < k; ++i) {
    code += static_cast<uint64_t>(t->sub(a % n, b % n)) * scale;
    a /= n;
    b /= n;
    scale *= n;
  }
  return static_cast<uint32_t>(code);
}

semilinear_map semilinear_map::identity(uint32_t k) {
  semilinear_map m;
  m.k = k;
  m.mat.assign(static_cast<size_t>(k) * k, 0);
  for (uint32_t i = 0; i < k; ++i) m.mat[static_cast<size_t>(i) * k + i] = 1;
  m.trans.assign(k, 0);
  m.frob = 0;
  return m;
}

uint32_t map_apply(const vector_space& s, const semilinear_map& m, uint32_t v) {
  const field_tower& f = *s.t;
  uint32_t k = s.k;
  std::vector<uint32_t> c = s.decode(v);
  for (uint32_t i = 0; i < k; ++i) c[i] = f.frobenius_iter(c[i], m.frob);
  std::vector<uint32_t> w(k);
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t acc = m.trans[i];
    for (uint32_t j = 0; j < k; ++j)
      acc = f.add(acc, f.mul(m.mat[static_cast<size_t>(i) * k + j], c[j]));
    w[i] = acc;
  }
  return s.encode(w);
}

semilinear_map map_compose(const vector_space& s, const semilinear_map& a,
                           const semilinear_map& b) {
  const field_tower& f = *s.t;
  uint32_t k = s.k;
  assert(a.k == k && b.k == k);
  semilinear_map r;
  r.k = k;
  r.frob = (a.frob + b.frob) % f.alpha();
  // phi_a applied to b's matrix and translation, then multiplied by a.
  std::vector<uint32_t> bm(static_cast<size_t>(k) * k), bt(k);
  for (size_t i = 0; i < bm.size(); ++i) bm[i] = f.frobenius_iter(b.mat[i], a.frob);
  for (uint32_t i = 0; i < k; ++i) bt[i] = f.frobenius_iter(b.trans[i], a.frob);
  r.mat.assign(static_cast<size_t>(k) * k, 0);
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j) {
      uint32_t acc = 0;
      for (uint32_t l = 0; l < k; ++l)
        acc = f.add(acc, f.mul(a.mat[static_cast<size_t>(i) * k + l],
                               bm[static_cast<size_t>(l) * k + j]));
      r.mat[static_cast<size_t>(i) * k + j] = acc;
    }
  r.trans.assign(k, 0);
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t acc = a.trans[i];
    for (uint32_t l = 0; l < k; ++l)
      acc = f.add(acc, f.mul(a.mat[static_cast<size_t>(i) * k + l], bt[l]));
    r.trans[i] = acc;
  }
  return r;
}

std::vector<uint32_t> map_perm_table(const vector_space& s, const semilinear_map& m) {
  std::vector<uint32_t> perm(s.size);
  for (uint32_t v = 0; v < s.size; ++v) perm[v] = map_apply(s, m, v);
  return perm;
}

uint32_t matrix_det(const field_tower& f, std::vector<uint32_t> mat, uint32_t k) {
  uint32_t det = 1;
  for (uint32_t col = 0; col < k; ++col) {
    uint32_t pivot = col;
    while (pivot < k && mat[static_cast<size_t>(pivot) * k + col] == 0) ++pivot;
    if (pivot == k) return 0;
    if (pivot != col) {
      for (uint32_t j = 0; j < k; ++j)
        std::swap(mat[static_cast<size_t>(pivot) * k + j],
                  mat[static_cast<size_t>(col) * k + j]);
      det = f.neg(det);
    }
    uint32_t pv = mat[static_cast<size_t>(col) * k + col];
    det = f.mul(det, pv);
    uint32_t pvinv = f.inv(pv);
    for (uint32_t r = col + 1; r < k; ++r) {
      uint32_t factor = f.mul(mat[static_cast<size_t>(r) * k + col], pvinv);
      if (factor == 0) continue;
      for (uint32_t j = col; j < k; ++j)
        mat[static_cast<size_t>(r) * k + j] =
            f.sub(mat[static_cast<size_t>(r) * k + j],
                  f.mul(factor, mat[static_cast<size_t>(col) * k + j]));
    }
  }
  return det;
}

std::vector<uint32_t> matrix_inverse(const field_tower& f, std::vector<uint32_t> mat,
                                     uint32_t k) {
  std::vector<uint32_t> inv(static_cast<size_t>(k) * k, 0);
  for (uint32_t i = 0; i < k; ++i) inv[static_cast<size_t>(i) * k + i] = 1;
  for (uint32_t col = 0; col < k; ++col) {
    uint32_t pivot = col;
    while (pivot < k && mat[static_cast<size_t>(pivot) * k + col] == 0) ++pivot;
    if (pivot == k) throw std::domain_error("singular matrix");
    if (pivot != col)
      for (uint32_t j = 0; j < k; ++j) {
        std::swap(mat[static_cast<size_t>(pivot) * k + j],
                  mat[static_cast<size_t>(col) * k + j]);
        std::swap(inv[static_cast<size_t>(pivot) * k + j],
                  inv[static_cast<size_t>(col) * k + j]);
      }
    uint32_t pvinv = f.inv(mat[static_cast<size_t>(col) * k + col]);
    for (uint32_t j = 0; j < k; ++j) {
      mat[static_cast<size_t>(col) * k + j] =
          f.mul(mat[static_cast<size_t>(col) * k + j], pvinv);
      inv[static_cast<size_t>(col) * k + j] =
          f.mul(inv[static_cast<size_t>(col) * k + j], pvinv);
    }
    for (uint32_t r = 0; r < k; ++r) {
      if (r == col) continue;
      uint32_t factor = mat[static_cast<size_t>(r) * k + col];
      if (factor == 0) continue;
      for (uint32_t j = 0; j < k; ++j) {
        mat[static_cast<size_t>(r) * k + j] =
            f.sub(mat[static_cast<size_t>(r) * k + j],
                  f.mul(factor, mat[static_cast<size_t>(col) * k + j]));
        inv[static_cast<size_t>(r) * k + j] =
            f.sub(inv[static_cast<size_t>(r) * k + j],
                  f.mul(factor, inv[static_cast<size_t>(col) * k + j]));
      }
    }
  }
  return inv;
}

group_spec make_spec(uint32_t p, uint32_t alpha, uint32_t omega, uint32_t k,
                     variant var) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  tower t = build_tower(p, alpha, omega);
  uint64_t size = 1;
  for (uint32_t i = 0; i < k; ++i) {
    size *= t->n();
    if (size > (1ull << 32))
      throw bound_error("point set size n^k exceeds 2^32; not supported");
  }
  group_spec g{var, k, t, galois_subgroup(t), vector_space{t, k, size}};
  return g;
}

namespace {

// GF(p)-basis of GF(n): the classes of x^t, whose codes are p^t.
std::vector<uint32_t> scalar_basis(const field_tower& f) {
  std::vector<uint32_t> b(f.alpha());
  uint32_t code = 1;
  for (uint32_t t = 0; t < f.alpha(); ++t) {
    b[t] = code;
    code *= f.p();
  }
  return b;
}

void append_transvections(const group_spec& g, bool fix_first_basis_vector,
                          std::vector<semilinear_map>& out) {
  uint32_t k = g.k;
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if (fix_first_basis_vector && j == 0) continue;
      for (uint32_t lam : scalar_basis(*g.t)) {
        semilinear_map m = semilinear_map::identity(k);
        m.mat[static_cast<size_t>(i) * k + j] = lam;
        out.push_back(std::move(m));
      }
    }
}

}  // namespace

std::vector<semilinear_map> group_generators(const group_spec& g) {
  std::vector<semilinear_map> gens;
  append_transvections(g, false, gens);
  for (uint32_t i = 0; i < g.k; ++i) {
    semilinear_map m = semilinear_map::identity(g.k);
    m.trans[i] = 1;
    gens.push_back(std::move(m));
  }
  if (g.gal.order > 1) {
    semilinear_map m = semilinear_map::identity(g.k);
    m.frob = g.t->omega();
    gens.push_back(std::move(m));
  }
  if (g.var == variant::agl && g.t->n() > 2) {
    semilinear_map m = semilinear_map::identity(g.k);
    m.mat[0] = g.t->generator();
    gens.push_back(std::move(m));
  }
  return gens;
}

std::vector<semilinear_map> two_point_stabilizer_generators(const group_spec& g) {
  std::vector<semilinear_map> gens;
  append_transvections(g, true, gens);
  if (g.gal.order > 1) {
    semilinear_map m = semilinear_map::identity(g.k);
    m.frob = g.t->omega();
    gens.push_back(std::move(m));
  }
  if (g.var == variant::agl && g.t->n() > 2) {
    semilinear_map m = semilinear_map::identity(g.k);
    m.mat[static_cast<size_t>(1) * g.k + 1] = g.t->generator();
    gens.push_back(std::move(m));
  }
  return gens;
}

std::vector<semilinear_map> two_point_stabilizer_elements(const group_spec& g) {
  const field_tower& f = *g.t;
  uint32_t k = g.k, n = f.n(), d = k - 1;
  uint64_t mat_space = 1;
  for (uint32_t i = 0; i < d * d; ++i) {
    mat_space *= n;
    if (mat_space > (1u << 20))
      throw bound_error("stabilizer enumeration too large");
  }
  std::vector<std::vector<uint32_t>> blocks;
  for (uint64_t code = 0; code < mat_space; ++code) {
    std::vector<uint32_t> b(static_cast<size_t>(d) * d);
    uint64_t c = code;
    for (auto& entry : b) {
      entry = static_cast<uint32_t>(c % n);
      c /= n;
    }
    uint32_t det = matrix_det(f, b, d);
    if (g.var == variant::asl ? det == 1 : det != 0) blocks.push_back(std::move(b));
  }
  uint64_t r_space = 1;
  for (uint32_t i = 0; i < d; ++i) r_space *= n;
  uint64_t total = blocks.size() * r_space * g.gal.order;
  if (total > (1u << 22)) throw bound_error("stabilizer enumeration too large");

  std::vector<semilinear_map> out;
  out.reserve(total);
  for (const auto& b : blocks)
    for (uint64_t rcode = 0; rcode < r_space; ++rcode)
      for (uint32_t h = 0; h < g.gal.order; ++h) {
        semilinear_map m = semilinear_map::identity(k);
        uint64_t rc = rcode;
        for (uint32_t j = 1; j < k; ++j) {
          m.mat[j] = static_cast<uint32_t>(rc % n);  // row 0, column j
          rc /= n;
        }
        for (uint32_t i = 1; i < k; ++i)
          for (uint32_t j = 1; j < k; ++j)
            m.mat[static_cast<size_t>(i) * k + j] =
                b[static_cast<size_t>(i - 1) * d + (j - 1)];
        m.frob = (h * f.omega()) % f.alpha();
        out.push_back(std::move(m));
      }
  return out;
}

std::vector<std::vector<uint32_t>> closure_perms(
    const std::vector<std::vector<uint32_t>>& gens, uint64_t max_size) {
  size_t n = gens.empty() ? 0 : gens[0].size();
  std::vector<uint32_t> id(n);
  for (size_t i = 0; i < n; ++i) id[i] = static_cast<uint32_t>(i);
  std::set<std::vector<uint32_t>> seen{id};
  std::vector<std::vector<uint32_t>> queue{id};
  for (size_t head = 0; head < queue.size(); ++head) {
    std::vector<uint32_t> cur = queue[head];
    for (const auto& gperm : gens) {
      std::vector<uint32_t> next(n);
      for (size_t i = 0; i < n; ++i) next[i] = gperm[cur[i]];
      if (seen.insert(next).second) {
        if (seen.size() > max_size)
          throw bound_error("permutation group exceeds enumeration bound");
        queue.push_back(std::move(next));
      }
    }
  }
  return queue;
}

stabilizer_orbits compute_stabilizer_orbits(const group_spec& g) {
  uint32_t n_points = static_cast<uint32_t>(g.space.size);
  std::vector<std::vector<uint32_t>> perms;
  for (const auto& m : two_point_stabilizer_generators(g))
    perms.push_back(map_perm_table(g.space, m));
  for (const auto& perm : perms) {
    assert(perm[0] == 0 && perm[1] == 1);
    (void)perm;
  }
  stabilizer_orbits so;
  so.label.assign(n_points, -3);
  so.label[0] = -1;
  so.label[1] = -2;
  std::vector<uint32_t> stack;
  for (uint32_t v = 2; v < n_points; ++v) {
    if (so.label[v] != -3) continue;
    int32_t id = static_cast<int32_t>(so.count++);
    so.min_member.push_back(v);
    uint64_t size = 0;
    stack.assign(1, v);
    so.label[v] = id;
    while (!stack.empty()) {
      uint32_t w = stack.back();
      stack.pop_back();
      ++size;
      for (const auto& perm : perms) {
        uint32_t img = perm[w];
        if (so.label[img] == -3) {
          so.label[img] = id;
          stack.push_back(img);
        }
      }
    }
    so.sizes.push_back(size);
  }
  return so;
}

semilinear_map transporter_to_base(const group_spec& g, uint32_t x, uint32_t y) {
  if (x == y) throw std::invalid_argument("transporter requires distinct points");
  const field_tower& f = *g.t;
  uint32_t k = g.k;
  uint32_t u = g.space.vsub(y, x);
  std::vector<uint32_t> ucoords = g.space.decode(u);

  // Build M column by column: column 0 is u, then standard basis vectors that
  // keep the columns independent.
  std::vector<std::vector<uint32_t>> cols{ucoords};
  auto rank_of = [&](const std::vector<std::vector<uint32_t>>& cs) {
    uint32_t rows = k, ncols = static_cast<uint32_t>(cs.size());
    std::vector<uint32_t> m(static_cast<size_t>(rows) * ncols);
    for (uint32_t r = 0; r < rows; ++r)
      for (uint32_t c = 0; c < ncols; ++c)
        m[static_cast<size_t>(r) * ncols + c] = cs[c][r];
    uint32_t rank = 0;
    for (uint32_t c = 0; c < ncols && rank < rows; ++c) {
      uint32_t pivot = rank;
      while (pivot < rows && m[static_cast<size_t>(pivot) * ncols + c] == 0) ++pivot;
      if (pivot == rows) continue;
      for (uint32_t j = 0; j < ncols; ++j)
        std::swap(m[static_cast<size_t>(pivot) * ncols + j],
                  m[static_cast<size_t>(rank) * ncols + j]);
      uint32_t pvinv = f.inv(m[static_cast<size_t>(rank) * ncols + c]);
      for (uint32_t r2 = rank + 1; r2 < rows; ++r2) {
        uint32_t factor = f.mul(m[static_cast<size_t>(r2) * ncols + c], pvinv);
        if (factor == 0) continue;
        for (uint32_t j = 0; j < ncols; ++j)
          m[static_cast<size_t>(r2) * ncols + j] =
              f.sub(m[static_cast<size_t>(r2) * ncols + j],
                    f.mul(factor, m[static_cast<size_t>(rank) * ncols + j]));
      }
      ++rank;
    }
    return rank;
  };
  for (uint32_t j = 0; j < k && cols.size() < k; ++j) {
    std::vector<uint32_t> e(k, 0);
    e[j] = 1;
    cols.push_back(e);
    if (rank_of(cols) != cols.size()) cols.pop_back();
  }
  assert(cols.size() == k);

  std::vector<uint32_t> M(static_cast<size_t>(k) * k);
  for (uint32_t r = 0; r < k; ++r)
    for (uint32_t c = 0; c < k; ++c) M[static_cast<size_t>(r) * k + c] = cols[c][r];
  uint32_t d = matrix_det(f, M, k);
  assert(d != 0);
  // Scale the last extension column so det M = 1; then A = M^{-1} is in SL.
  uint32_t dinv = f.inv(d);
  for (uint32_t r = 0; r < k; ++r)
    M[static_cast<size_t>(r) * k + (k - 1)] =
        f.mul(M[static_cast<size_t>(r) * k + (k - 1)], dinv);

  semilinear_map out;
  out.k = k;
  out.mat = matrix_inverse(f, M, k);
  out.trans.assign(k, 0);
  out.frob = 0;
  std::vector<uint32_t> xc = g.space.decode(x);
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t acc = 0;
    for (uint32_t j = 0; j < k; ++j)
      acc = f.add(acc, f.mul(out.mat[static_cast<size_t>(i) * k + j], xc[j]));
    out.trans[i] = f.neg(acc);
  }
  return out;
}

triple_partition label_all_triples(const group_spec& g, unsigned workers) {
  uint64_t n64 = g.space.size;
  if (n64 > 256)
    throw bound_error("point set size exceeds 256; full labeling not supported");
  uint32_t N = static_cast<uint32_t>(n64);

  stabilizer_orbits so = compute_stabilizer_orbits(g);
  if (so.count + 4 > 255)
    throw bound_error("class count exceeds byte label range");
  std::vector<uint8_t> base_label(N);
  base_label[0] = 2;
  base_label[1] = 1;
  for (uint32_t v = 2; v < N; ++v)
    base_label[v] = static_cast<uint8_t>(4 + so.label[v]);

  // sub2[x*N+z] = z - x; lmap[u*N+v] = A_u v where A_u maps the pair (0,u) to
  // the base pair.
  std::vector<uint8_t> sub2(static_cast<size_t>(N) * N);
  for (uint32_t x = 0; x < N; ++x)
    for (uint32_t z = 0; z < N; ++z)
      sub2[static_cast<size_t>(x) * N + z] = static_cast<uint8_t>(g.space.vsub(z, x));
  std::vector<uint8_t> lmap(static_cast<size_t>(N) * N, 0);
  for (uint32_t u = 1; u < N; ++u) {
    semilinear_map m = transporter_to_base(g, 0, u);
    for (uint32_t v = 0; v < N; ++v)
      lmap[static_cast<size_t>(u) * N + v] =
          static_cast<uint8_t>(map_apply(g.space, m, v));
    assert(lmap[static_cast<size_t>(u) * N + u] == 1);
    assert(lmap[static_cast<size_t>(u) * N + 0] == 0);
  }

  triple_partition tp;
  tp.omega_size = N;
  tp.labels.assign(static_cast<uint64_t>(N) * N * N, 0);
  unsigned w = resolve_workers(workers, N);
  parallel_slices(N, w, [&](uint32_t xbegin, uint32_t xend, unsigned) {
    for (uint32_t x = xbegin; x < xend; ++x) {
      const uint8_t* srow = &sub2[static_cast<size_t>(x) * N];
      for (uint32_t y = 0; y < N; ++y) {
        uint8_t* out = &tp.labels[(static_cast<uint64_t>(x) * N + y) * N];
        uint32_t u = srow[y];
        if (u == 0) {
          for (uint32_t z = 0; z < N; ++z) out[z] = (z == x) ? 0 : 3;
        } else {
          const uint8_t* lrow = &lmap[static_cast<size_t>(u) * N];
          for (uint32_t z = 0; z < N; ++z) out[z] = base_label[lrow[srow[z]]];
        }
      }
    }
  });
  tp.recompute_stats();
  assert(tp.class_count == so.count + 4);
  return tp;
}

triple_partition bfs_orbit_oracle(const group_spec& g) {
  uint64_t n64 = g.space.size;
  if (n64 > 64)
    throw bound_error("point set size exceeds 64; orbit oracle not supported");
  uint32_t N = static_cast<uint32_t>(n64);
  uint64_t total = static_cast<uint64_t>(N) * N * N;

  std::vector<std::vector<uint32_t>> perms;
  for (const auto& m : group_generators(g))
    perms.push_back(map_perm_table(g.space, m));

  std::vector<int32_t> orbit(total, -1);
  int32_t norb = 0;
  std::vector<uint64_t> stack;
  for (uint64_t t0 = 0; t0 < total; ++t0) {
    if (orbit[t0] != -1) continue;
    int32_t id = norb++;
    stack.assign(1, t0);
    orbit[t0] = id;
    while (!stack.empty()) {
      uint64_t t = stack.back();
      stack.pop_back();
      uint32_t x = static_cast<uint32_t>(t / (static_cast<uint64_t>(N) * N));
      uint32_t y = static_cast<uint32_t>(t / N % N);
      uint32_t z = static_cast<uint32_t>(t % N);
      for (const auto& perm : perms) {
        uint64_t img = (static_cast<uint64_t>(perm[x]) * N + perm[y]) * N + perm[z];
        if (orbit[img] == -1) {
          orbit[img] = id;
          stack.push_back(img);
        }
      }
    }
  }

  // Canonical relabel: diagonal patterns take 0..3, the rest are ordered by
  // the least w with (0,1,w) in the orbit.
  auto idx = [N](uint32_t x, uint32_t y, uint32_t z) {
    return (static_cast<uint64_t>(x) * N + y) * N + z;
  };
  std::vector<int32_t> final_of(norb, -1);
  final_of[orbit[idx(0, 0, 0)]] = 0;
  final_of[orbit[idx(0, 1, 1)]] = 1;
  final_of[orbit[idx(1, 0, 1)]] = 2;
  final_of[orbit[idx(0, 0, 1)]] = 3;
  int32_t next = 4;
  for (uint32_t w = 2; w < N; ++w) {
    int32_t prov = orbit[idx(0, 1, w)];
    if (final_of[prov] == -1) final_of[prov] = next++;
  }
  if (next != norb) throw std::logic_error("orbit missing a base-pair triple");

  triple_partition tp;
  tp.omega_size = N;
  tp.labels.resize(total);
  for (uint64_t t = 0; t < total; ++t) {
    int32_t fl = final_of[orbit[t]];
    assert(fl >= 0 && fl < 256);
    tp.labels[t] = static_cast<uint8_t>(fl);
  }
  tp.recompute_stats();
  return tp;
}

}  // namespace ast
