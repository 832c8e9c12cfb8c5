#include "ast/verify.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>

namespace ast {
namespace {

using ref_entries = std::vector<std::pair<uint32_t, uint64_t>>;  // key -> count

// Scratch for histogram checks.  A class histogram has at most N nonzero
// keys; references are kept as sorted (key,count) lists while the per-triple
// side uses either a dense counting cube over (i,j,k) keys or a sort-based
// run-length pass.
struct reg_ctx {
  uint32_t n = 0, cc = 0;
  bool dense = false;
  std::vector<uint32_t> delta;   // cc^3 when dense
  std::vector<uint32_t> touched;
  std::vector<uint32_t> keybuf;
  ref_entries rle;

  reg_ctx(uint32_t n_, uint32_t cc_) : n(n_), cc(cc_), dense(cc_ <= 64) {
    if (dense) delta.assign(static_cast<size_t>(cc) * cc * cc, 0);
    touched.reserve(n);
    keybuf.reserve(n);
  }
};

struct key_detail {
  bool ok = true;
  uint32_t key = 0;
  uint64_t expected = 0, got = 0;
};

key_detail first_diff(const ref_entries& got, const ref_entries& want) {
  size_t a = 0, b = 0;
  while (a < got.size() || b < want.size()) {
    if (b == want.size() || (a < got.size() && got[a].first < want[b].first))
      return {false, got[a].first, 0, got[a].second};
    if (a == got.size() || want[b].first < got[a].first)
      return {false, want[b].first, want[b].second, 0};
    if (got[a].second != want[b].second)
      return {false, got[a].first, want[b].second, got[a].second};
    ++a;
    ++b;
  }
  return {};
}

void collect_rle(reg_ctx& c, const triple_partition& tp, uint64_t t) {
  uint32_t n = c.n;
  uint32_t x = static_cast<uint32_t>(t / (static_cast<uint64_t>(n) * n));
  uint32_t y = static_cast<uint32_t>(t / n % n);
  uint32_t z = static_cast<uint32_t>(t % n);
  const uint8_t* L = tp.labels.data();
  uint64_t nn = static_cast<uint64_t>(n) * n;
  uint64_t base_yz = static_cast<uint64_t>(y) * n + z;
  uint64_t base_xz = static_cast<uint64_t>(x) * nn + z;
  uint64_t base_xy = (static_cast<uint64_t>(x) * n + y) * n;
  c.keybuf.clear();
  for (uint32_t w = 0; w < n; ++w) {
    uint32_t i = L[base_yz + static_cast<uint64_t>(w) * nn];
    uint32_t j = L[base_xz + static_cast<uint64_t>(w) * n];
    uint32_t k = L[base_xy + w];
    c.keybuf.push_back((i * c.cc + j) * c.cc + k);
  }
  std::sort(c.keybuf.begin(), c.keybuf.end());
  c.rle.clear();
  for (uint32_t key : c.keybuf) {
    if (!c.rle.empty() && c.rle.back().first == key)
      ++c.rle.back().second;
    else
      c.rle.emplace_back(key, 1);
  }
}

key_detail check_triple(reg_ctx& c, const triple_partition& tp, uint64_t t,
                        const ref_entries& ref) {
  if (!c.dense) {
    collect_rle(c, tp, t);
    if (c.rle == ref) return {};
    return first_diff(c.rle, ref);
  }
  uint32_t n = c.n;
  uint32_t x = static_cast<uint32_t>(t / (static_cast<uint64_t>(n) * n));
  uint32_t y = static_cast<uint32_t>(t / n % n);
  uint32_t z = static_cast<uint32_t>(t % n);
  const uint8_t* L = tp.labels.data();
  uint64_t nn = static_cast<uint64_t>(n) * n;
  uint64_t base_yz = static_cast<uint64_t>(y) * n + z;
  uint64_t base_xz = static_cast<uint64_t>(x) * nn + z;
  uint64_t base_xy = (static_cast<uint64_t>(x) * n + y) * n;
  c.touched.clear();
  for (uint32_t w = 0; w < n; ++w) {
    uint32_t i = L[base_yz + static_cast<uint64_t>(w) * nn];
    uint32_t j = L[base_xz + static_cast<uint64_t>(w) * n];
    uint32_t k = L[base_xy + w];
    uint32_t key = (i * c.cc + j) * c.cc + k;
    if (c.delta[key]++ == 0) c.touched.push_back(key);
  }
  bool ok = c.touched.size() == ref.size();
  if (ok)
    for (const auto& [key, cnt] : ref)
      if (c.delta[key] != cnt) {
        ok = false;
        break;
      }
  key_detail out;
  if (!ok) {
    std::sort(c.touched.begin(), c.touched.end());
    ref_entries got;
    got.reserve(c.touched.size());
    for (uint32_t key : c.touched) got.emplace_back(key, c.delta[key]);
    out = first_diff(got, ref);
  }
  for (uint32_t key : c.touched) c.delta[key] = 0;
  return out;
}

std::vector<ref_entries> build_all_refs(const triple_partition& tp) {
  reg_ctx c(tp.omega_size, tp.class_count);
  std::vector<ref_entries> refs(tp.class_count);
  for (uint16_t l = 0; l < tp.class_count; ++l) {
    collect_rle(c, tp, tp.first_triple[l]);
    refs[l] = c.rle;
  }
  return refs;
}

std::vector<intersection_entry> flatten_refs(const std::vector<ref_entries>& refs,
                                             uint32_t cc) {
  std::vector<intersection_entry> out;
  for (uint16_t l = 0; l < refs.size(); ++l)
    for (const auto& [key, cnt] : refs[l]) {
      intersection_entry e;
      e.k = static_cast<uint16_t>(key % cc);
      e.j = static_cast<uint16_t>(key / cc % cc);
      e.i = static_cast<uint16_t>(key / cc / cc);
      e.l = l;
      e.p = cnt;
      out.push_back(e);
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j, a.k, a.l) < std::tie(b.i, b.j, b.k, b.l);
  });
  return out;
}

}  // namespace

std::vector<valencies> reference_valencies(const triple_partition& tp) {
  uint32_t n = tp.omega_size, cc = tp.class_count;
  std::vector<valencies> out(cc);
  for (uint32_t w = 0; w < n; ++w) {
    ++out[tp.label(w, 0, 1)].n1;
    ++out[tp.label(0, w, 1)].n2;
    ++out[tp.label(0, 1, w)].n3;
  }
  return out;
}

valency_result verify_valency_condition(const triple_partition& tp,
                                        unsigned workers) {
  uint32_t n = tp.omega_size, cc = tp.class_count;
  valency_result res;
  res.per_class = reference_valencies(tp);
  std::vector<std::vector<uint64_t>> ref(3, std::vector<uint64_t>(cc, 0));
  for (uint16_t i = 0; i < cc; ++i) {
    ref[0][i] = res.per_class[i].n1;
    ref[1][i] = res.per_class[i].n2;
    ref[2][i] = res.per_class[i].n3;
  }

  unsigned w = resolve_workers(workers, n);
  struct slot_result {
    bool pass = true;
    bool has_witness = false;
    uint32_t x = 0, y = 0;
    int dir = 0;
    uint16_t cls = 0;
    uint64_t expected = 0, got = 0;
  };
  std::vector<slot_result> slots(w);
  parallel_slices(n, w, [&](uint32_t beg, uint32_t end, unsigned slot) {
    slot_result& r = slots[slot];
    std::vector<uint64_t> cnt(cc);
    const uint8_t* L = tp.labels.data();
    uint64_t nn = static_cast<uint64_t>(n) * n;
    for (uint32_t a = beg; a < end && !r.has_witness; ++a)
      for (uint32_t b = 0; b < n && !r.has_witness; ++b) {
        if (a == b) continue;
        for (int dir = 1; dir <= 3 && !r.has_witness; ++dir) {
          std::fill(cnt.begin(), cnt.end(), 0);
          for (uint32_t v = 0; v < n; ++v) {
            uint64_t t = dir == 1 ? static_cast<uint64_t>(v) * nn + static_cast<uint64_t>(a) * n + b
                       : dir == 2 ? static_cast<uint64_t>(a) * nn + static_cast<uint64_t>(v) * n + b
                                  : static_cast<uint64_t>(a) * nn + static_cast<uint64_t>(b) * n + v;
            ++cnt[L[t]];
          }
          for (uint16_t c = 0; c < cc; ++c)
            if (cnt[c] != ref[dir - 1][c]) {
              r.pass = false;
              r.has_witness = true;
              r.x = a;
              r.y = b;
              r.dir = dir;
              r.cls = c;
              r.expected = ref[dir - 1][c];
              r.got = cnt[c];
              break;
            }
        }
      }
  });
  for (const auto& s : slots) {
    if (!s.pass && res.pass) {
      res.pass = false;
      res.has_witness = true;
      res.witness_x = s.x;
      res.witness_y = s.y;
      res.witness_direction = s.dir;
      res.witness_class = s.cls;
      res.expected = s.expected;
      res.got = s.got;
    }
  }
  return res;
}

std::vector<intersection_entry> reference_intersection_numbers(
    const triple_partition& tp) {
  return flatten_refs(build_all_refs(tp), tp.class_count);
}

regularity_result verify_principal_regularity(const triple_partition& tp,
                                              const regularity_options& opt) {
  uint32_t n = tp.omega_size, cc = tp.class_count;
  uint64_t total = static_cast<uint64_t>(n) * n * n;
  std::vector<ref_entries> refs = build_all_refs(tp);

  regularity_result res;
  res.numbers = flatten_refs(refs, cc);

  auto note_failure = [&](uint64_t t, const key_detail& d) {
    if (res.has_witness && res.witness_triple <= t) return;
    res.pass = false;
    res.has_witness = true;
    res.witness_triple = t;
    res.witness_k = static_cast<uint16_t>(d.key % cc);
    res.witness_j = static_cast<uint16_t>(d.key / cc % cc);
    res.witness_i = static_cast<uint16_t>(d.key / cc / cc);
    res.expected = d.expected;
    res.got = d.got;
  };

  if (opt.mode == regularity_mode::full) {
    unsigned w = resolve_workers(opt.workers, n);
    struct slot_result {
      bool has_witness = false;
      uint64_t triple = 0;
      key_detail detail;
      uint64_t checked = 0;
    };
    std::vector<slot_result> slots(w);
    parallel_slices(n, w, [&](uint32_t beg, uint32_t end, unsigned slot) {
      slot_result& r = slots[slot];
      reg_ctx ctx(n, cc);
      uint64_t nn = static_cast<uint64_t>(n) * n;
      for (uint64_t t = beg * nn; t < end * nn; ++t) {
        key_detail d = check_triple(ctx, tp, t, refs[tp.labels[t]]);
        ++r.checked;
        if (!d.ok && !r.has_witness) {
          r.has_witness = true;
          r.triple = t;
          r.detail = d;
        }
      }
    });
    for (const auto& s : slots) {
      res.checked_triples += s.checked;
      if (s.has_witness) note_failure(s.triple, s.detail);
    }
    return res;
  }

  // Sampled mode: single-threaded for seed-stable selection.
  reg_ctx ctx(n, cc);
  uint16_t smallest = 0;
  for (uint16_t l = 1; l < cc; ++l)
    if (tp.class_sizes[l] < tp.class_sizes[smallest]) smallest = l;
  for (uint64_t t = 0; t < total; ++t) {
    if (tp.labels[t] != smallest) continue;
    key_detail d = check_triple(ctx, tp, t, refs[smallest]);
    ++res.checked_triples;
    if (!d.ok) note_failure(t, d);
  }

  uint32_t S = opt.samples_per_class;
  std::mt19937_64 rng(opt.seed);
  std::vector<std::vector<uint64_t>> samples(cc);
  std::vector<uint64_t> seen(cc, 0);
  for (uint64_t t = 0; t < total; ++t) {
    uint16_t c = tp.labels[t];
    if (c == smallest) continue;
    uint64_t cnt = ++seen[c];
    if (samples[c].size() < S) {
      samples[c].push_back(t);
    } else {
      uint64_t j = rng() % cnt;
      if (j < S) samples[c][j] = t;
    }
  }
  for (uint16_t c = 0; c < cc; ++c)
    for (uint64_t t : samples[c]) {
      key_detail d = check_triple(ctx, tp, t, refs[c]);
      ++res.checked_triples;
      if (!d.ok) note_failure(t, d);
    }
  return res;
}

class_histogram_result class_intersection_histogram(const triple_partition& tp,
                                                    uint16_t l, unsigned workers) {
  uint32_t n = tp.omega_size, cc = tp.class_count;
  if (l >= cc) throw std::invalid_argument("class id out of range");
  reg_ctx seed_ctx(n, cc);
  collect_rle(seed_ctx, tp, tp.first_triple[l]);
  ref_entries ref = seed_ctx.rle;

  class_histogram_result res;
  for (const auto& [key, cnt] : ref) {
    intersection_entry e;
    e.k = static_cast<uint16_t>(key % cc);
    e.j = static_cast<uint16_t>(key / cc % cc);
    e.i = static_cast<uint16_t>(key / cc / cc);
    e.l = l;
    e.p = cnt;
    res.numbers.push_back(e);
  }
  std::sort(res.numbers.begin(), res.numbers.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j, a.k, a.l) < std::tie(b.i, b.j, b.k, b.l);
  });

  unsigned w = resolve_workers(workers, n);
  struct slot_result {
    bool has_witness = false;
    uint64_t triple = 0;
  };
  std::vector<slot_result> slots(w);
  parallel_slices(n, w, [&](uint32_t beg, uint32_t end, unsigned slot) {
    slot_result& r = slots[slot];
    reg_ctx ctx(n, cc);
    uint64_t nn = static_cast<uint64_t>(n) * n;
    for (uint64_t t = beg * nn; t < end * nn; ++t) {
      if (tp.labels[t] != l) continue;
      key_detail d = check_triple(ctx, tp, t, ref);
      if (!d.ok && !r.has_witness) {
        r.has_witness = true;
        r.triple = t;
      }
    }
  });
  for (const auto& s : slots)
    if (s.has_witness && res.constant) {
      res.constant = false;
      res.first_deviation = s.triple;
    }
  return res;
}

const std::array<std::array<int, 3>, 6> s3_perms = {{{0, 1, 2},
                                                     {1, 0, 2},
                                                     {2, 1, 0},
                                                     {0, 2, 1},
                                                     {1, 2, 0},
                                                     {2, 0, 1}}};

s3_result verify_s3_closure(const triple_partition& tp, unsigned workers) {
  uint32_t n = tp.omega_size, cc = tp.class_count;
  s3_result res;
  res.maps.assign(6, std::vector<uint8_t>(cc, 0));
  auto idx = [n](uint32_t a, uint32_t b, uint32_t c) {
    return (static_cast<uint64_t>(a) * n + b) * n + c;
  };
  for (int pi = 0; pi < 6; ++pi) {
    const auto& P = s3_perms[pi];
    std::vector<char> hit(cc, 0);
    for (uint16_t c = 0; c < cc; ++c) {
      uint64_t t = tp.first_triple[c];
      uint32_t v[3] = {static_cast<uint32_t>(t / (static_cast<uint64_t>(n) * n)),
                       static_cast<uint32_t>(t / n % n),
                       static_cast<uint32_t>(t % n)};
      uint8_t img = tp.labels[idx(v[P[0]], v[P[1]], v[P[2]])];
      res.maps[pi][c] = img;
      if (hit[img] && res.pass) {
        res.pass = false;
        res.has_witness = true;
        res.witness_perm = pi;
        res.witness_triple = t;
      }
      hit[img] = 1;
    }
  }
  if (!res.pass) return res;

  unsigned w = resolve_workers(workers, n);
  for (int pi = 0; pi < 6; ++pi) {
    const auto& P = s3_perms[pi];
    const auto& m = res.maps[pi];
    struct slot_result {
      bool has_witness = false;
      uint64_t triple = 0;
    };
    std::vector<slot_result> slots(w);
    parallel_slices(n, w, [&](uint32_t beg, uint32_t end, unsigned slot) {
      slot_result& r = slots[slot];
      uint64_t nn = static_cast<uint64_t>(n) * n;
      for (uint64_t t = beg * nn; t < end * nn && !r.has_witness; ++t) {
        uint32_t v[3] = {static_cast<uint32_t>(t / nn),
                         static_cast<uint32_t>(t / n % n),
                         static_cast<uint32_t>(t % n)};
        if (tp.labels[idx(v[P[0]], v[P[1]], v[P[2]])] != m[tp.labels[t]]) {
          r.has_witness = true;
          r.triple = t;
        }
      }
    });
    for (const auto& s : slots)
      if (s.has_witness) {
        res.pass = false;
        res.has_witness = true;
        res.witness_perm = pi;
        res.witness_triple = s.triple;
        return res;
      }
  }
  return res;
}

trivial_result verify_trivial_relations(const triple_partition& tp,
                                        unsigned workers) {
  uint32_t n = tp.omega_size;
  trivial_result res;
  unsigned w = resolve_workers(workers, n);
  struct slot_result {
    bool has_witness = false;
    uint64_t triple = 0;
  };
  std::vector<slot_result> slots(w);
  parallel_slices(n, w, [&](uint32_t beg, uint32_t end, unsigned slot) {
    slot_result& r = slots[slot];
    uint64_t nn = static_cast<uint64_t>(n) * n;
    for (uint64_t t = beg * nn; t < end * nn && !r.has_witness; ++t) {
      uint32_t x = static_cast<uint32_t>(t / nn);
      uint32_t y = static_cast<uint32_t>(t / n % n);
      uint32_t z = static_cast<uint32_t>(t % n);
      int want = trivial_pattern(x, y, z);
      uint8_t got = tp.labels[t];
      bool ok = want >= 0 ? got == want : got >= 4;
      if (!ok) {
        r.has_witness = true;
        r.triple = t;
      }
    }
  });
  for (const auto& s : slots)
    if (s.has_witness && res.pass) {
      res.pass = false;
      res.has_witness = true;
      res.witness_triple = s.triple;
    }
  return res;
}

const char* verdict_name(compare_verdict v) {
  switch (v) {
    case compare_verdict::equal: return "equal";
    case compare_verdict::a_refines_b: return "a_refines_b";
    case compare_verdict::b_refines_a: return "b_refines_a";
    default: return "incomparable";
  }
}

compare_result compare_partitions(const triple_partition& a,
                                  const triple_partition& b) {
  if (a.omega_size != b.omega_size)
    throw std::invalid_argument("partitions are over different point sets");
  uint64_t total = a.labels.size();
  std::vector<int32_t> map_ab(a.class_count, -1), map_ba(b.class_count, -1);
  bool ab = true, ba = true;
  compare_result res;
  for (uint64_t t = 0; t < total; ++t) {
    uint8_t la = a.labels[t], lb = b.labels[t];
    if (map_ab[la] == -1)
      map_ab[la] = lb;
    else if (map_ab[la] != lb && ab) {
      ab = false;
      res.witness_a = static_cast<int64_t>(t);
    }
    if (map_ba[lb] == -1)
      map_ba[lb] = la;
    else if (map_ba[lb] != la && ba) {
      ba = false;
      res.witness_b = static_cast<int64_t>(t);
    }
    if (!ab && !ba) break;
  }
  res.verdict = ab ? (ba ? compare_verdict::equal : compare_verdict::a_refines_b)
                   : (ba ? compare_verdict::b_refines_a
                         : compare_verdict::incomparable);
  return res;
}

}  // namespace ast
