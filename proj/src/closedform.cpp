#include "ast/closedform.hpp"

#include <array>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

namespace ast {
namespace {

using kind = relation_name::kind;

// Shared evaluation state for the coefficient formulas: all of them count
// orbit values subject to membership constraints, so we precompute the orbit
// decomposition once per call.
struct formula_ctx {
  const field_tower& f;
  const galois_subgroup& gal;
  transversal tv;

  explicit formula_ctx(const group_spec& g)
      : f(*g.t), gal(g.gal), tv(h_orbit_transversal(g.gal)) {}

  bool in_orbit(uint32_t v, uint32_t rep) const {
    return v != 0 && tv.rep_of[v] == rep;
  }
};

}  // namespace

std::string relation_name::str() const {
  switch (family) {
    case kind::trivial: return "R" + std::to_string(value);
    case kind::type1: return "R^" + std::to_string(value);
    case kind::type2: return "^" + std::to_string(value) + "R";
    case kind::big: return "BIG";
    default: return "C" + std::to_string(value);
  }
}

name_table build_name_table(const group_spec& g, const triple_partition& tp) {
  uint32_t n = g.t->n();
  name_table nt;
  nt.of_class.assign(tp.class_count, relation_name{});
  std::vector<int> hits(tp.class_count, 0);
  for (uint16_t c = 0; c < 4; ++c) {
    nt.of_class[c] = {kind::trivial, c};
    ++hits[c];
  }
  transversal tv = h_orbit_transversal(g.gal);
  auto put = [&](uint16_t cls, relation_name nm) {
    if (nt.of_class[cls].family == kind::unnamed) nt.of_class[cls] = nm;
    ++hits[cls];
  };
  for (uint32_t rep : tv.representatives) {
    if (rep == 0 || rep == 1) continue;
    uint16_t cls = tp.label(0, 1, rep);
    nt.type1_class[rep] = cls;
    put(cls, {kind::type1, rep});
  }
  if (g.k == 2) {
    for (uint32_t rep : tv.representatives) {
      if (rep == 0) continue;
      uint16_t cls = tp.label(0, 1, rep * n);
      nt.type2_class[rep] = cls;
      put(cls, {kind::type2, rep});
    }
  } else {
    uint16_t cls = tp.label(0, 1, n);
    nt.big_class = cls;
    put(cls, {kind::big, cls});
  }
  for (uint16_t c = 0; c < tp.class_count; ++c) {
    if (hits[c] != 1) nt.bijective = false;
    if (nt.of_class[c].family == kind::unnamed) {
      nt.of_class[c].value = c;
      nt.bijective = false;
    }
  }
  return nt;
}

count_prediction predict_relation_counts(const group_spec& g) {
  uint64_t b = burnside_orbit_count(g.t->q(), g.gal.order);
  count_prediction out;
  out.type1 = b - 2;
  if (g.k == 2) {
    out.type2 = b - 1;
    out.nontrivial = 2 * b - 3;
  } else {
    out.big = true;
    out.nontrivial = b - 1;
  }
  return out;
}

uint64_t predict_third_valency(const group_spec& g, const relation_name& name) {
  switch (name.family) {
    case kind::type1:
      return degree_over_subfield(g.gal, name.value);
    case kind::type2:
      return static_cast<uint64_t>(g.t->n()) *
             degree_over_subfield(g.gal, name.value);
    case kind::big:
      return g.space.size - g.t->n();
    default:
      throw std::invalid_argument("no degree-based valency for " + name.str());
  }
}

product_prediction predict_nontrivial_product(const group_spec& g,
                                              const name_table& nt,
                                              const relation_name& a,
                                              const relation_name& b,
                                              const relation_name& c) {
  const relation_name* ops[3] = {&a, &b, &c};
  for (const auto* op : ops)
    if (op->family != kind::type1 && op->family != kind::type2)
      throw std::invalid_argument("operand " + op->str() + " is not type1/type2");
  if (g.k != 2) return {};

  formula_ctx ctx(g);
  const field_tower& f = ctx.f;
  product_prediction out;
  out.covered = true;
  out.by_class.assign(nt.of_class.size(), 0);

  int t2_mask = 0;
  for (int s = 0; s < 3; ++s)
    if (ops[s]->family == kind::type2) t2_mask |= 1 << s;
  int t2_count = (t2_mask & 1) + (t2_mask >> 1 & 1) + (t2_mask >> 2 & 1);

  if (t2_count == 0) {
    out.item = 1;
    auto oc = h_orbit_values(ctx.gal, c.value);
    for (const auto& [lrep, cls] : nt.type1_class) {
      uint64_t p = 0;
      for (uint32_t vc : oc)
        if (ctx.in_orbit(f.div(f.sub(lrep, vc), f.sub(1, vc)), a.value) &&
            ctx.in_orbit(f.div(lrep, vc), b.value))
          ++p;
      out.by_class[cls] = p;
    }
    return out;
  }
  if (t2_count == 1) {
    out.item = 2;  // vanishes identically
    return out;
  }
  if (t2_count == 3) {
    out.item = 6;
    auto oc = h_orbit_values(ctx.gal, c.value);
    for (const auto& [lrep, cls] : nt.type1_class) {
      uint64_t p = 0;
      for (uint32_t vc : oc)
        if (ctx.in_orbit(f.mul(vc, f.sub(lrep, 1)), a.value) &&
            ctx.in_orbit(f.neg(f.mul(vc, lrep)), b.value))
          ++p;
      out.by_class[cls] = g.t->q() * p;
    }
    auto oa = h_orbit_values(ctx.gal, a.value);
    auto ob = h_orbit_values(ctx.gal, b.value);
    for (const auto& [jrep, cls] : nt.type2_class) {
      uint64_t p = 0;
      for (uint32_t vb : ob) {
        bool found = false;
        for (uint32_t va : oa) {
          for (uint32_t vcc : oc)
            if (f.add(va, f.add(vb, vcc)) == jrep) {
              found = true;
              break;
            }
          if (found) break;
        }
        if (found) ++p;
      }
      out.by_class[cls] = p;
    }
    return out;
  }

  // two type2, one type1: the slot of the type1 operand picks the item
  if (!(t2_mask & 4)) {
    out.item = 3;  // (frak_a, frak_b, c)
    auto oc = h_orbit_values(ctx.gal, c.value);
    for (const auto& [lrep, cls] : nt.type2_class) {
      uint64_t p = 0;
      for (uint32_t vc : oc)
        if (ctx.in_orbit(f.mul(lrep, f.sub(1, vc)), a.value) &&
            ctx.in_orbit(f.mul(lrep, vc), b.value))
          ++p;
      out.by_class[cls] = p;
    }
    return out;
  }
  if (!(t2_mask & 2)) {
    out.item = 4;  // (frak_a, c, frak_b)
    auto ob = h_orbit_values(ctx.gal, c.value);
    for (const auto& [lrep, cls] : nt.type2_class) {
      uint64_t p = 0;
      for (uint32_t vb : ob)
        if (ctx.in_orbit(f.div(lrep, vb), b.value) &&
            ctx.in_orbit(f.sub(lrep, vb), a.value))
          ++p;
      out.by_class[cls] = p;
    }
    return out;
  }
  out.item = 5;  // (c, frak_a, frak_b)
  auto ob = h_orbit_values(ctx.gal, c.value);
  for (const auto& [lrep, cls] : nt.type2_class) {
    uint64_t p = 0;
    for (uint32_t vb : ob)
      if (ctx.in_orbit(f.sub(1, f.div(lrep, vb)), a.value) &&
          ctx.in_orbit(f.sub(lrep, vb), b.value))
        ++p;
    out.by_class[cls] = p;
  }
  return out;
}

product_prediction predict_one_trivial_product(const group_spec& g,
                                               const name_table& nt,
                                               const relation_name& a,
                                               const relation_name& b,
                                               const relation_name& c) {
  const relation_name* ops[3] = {&a, &b, &c};
  int tslot = -1, tcount = 0;
  for (int s = 0; s < 3; ++s)
    if (ops[s]->family == kind::trivial) {
      tslot = s;
      ++tcount;
    }
  if (tcount == 0) throw std::invalid_argument("no trivial operand");
  if (tcount > 1 || g.k != 2) return {};
  uint32_t tcls = ops[tslot]->value;
  if (tcls != static_cast<uint32_t>(tslot) + 1) return {};  // R0 or off-slot

  const relation_name* rest[2];
  for (int s = 0, r = 0; s < 3; ++s)
    if (s != tslot) rest[r++] = ops[s];
  for (const auto* op : rest)
    if (op->family != kind::type1 && op->family != kind::type2) return {};

  formula_ctx ctx(g);
  const field_tower& f = ctx.f;
  product_prediction out;
  out.covered = true;
  out.by_class.assign(nt.of_class.size(), 0);

  bool first_t1 = rest[0]->family == kind::type1;
  bool second_t1 = rest[1]->family == kind::type1;
  uint32_t av = rest[0]->value, bv = rest[1]->value;
  auto ob = h_orbit_values(ctx.gal, bv);

  if (first_t1 && second_t1) {
    out.item = 101 + tslot;
    uint64_t p = 0;
    for (uint32_t vb : ob) {
      uint32_t u = tslot == 0   ? f.inv(vb)
                   : tslot == 1 ? f.div(vb, f.sub(vb, 1))
                                : f.sub(1, vb);
      if (ctx.in_orbit(u, av)) ++p;
    }
    out.by_class[tcls] = p;
    return out;
  }
  if (first_t1 != second_t1) {
    out.item = 104;  // mixed operands vanish
    return out;
  }
  out.item = 105;
  uint64_t p = 0;
  for (uint32_t vb : ob)
    if (ctx.in_orbit(f.neg(vb), av)) ++p;
  out.by_class[tcls] = g.t->q() * p;
  return out;
}

crosscheck_report run_crosscheck(const group_spec& g, const triple_partition& tp,
                                 unsigned workers) {
  if (g.var != variant::asl)
    throw std::invalid_argument("crosscheck is defined for the asl variant");

  crosscheck_report rep;
  auto add = [&](std::string quantity, std::string predicted, std::string actual,
                 const char* source) {
    bool m = predicted == actual;
    rep.clean = rep.clean && m;
    rep.lines.push_back(
        {std::move(quantity), std::move(predicted), std::move(actual), m, source});
    return m;
  };

  uint16_t cc = static_cast<uint16_t>(tp.class_count);
  uint32_t nq = tp.omega_size;

  {
    valency_result vr = verify_valency_condition(tp, workers);
    regularity_options opt;
    opt.mode = nq <= 64 ? regularity_mode::full : regularity_mode::sampled;
    opt.workers = workers;
    regularity_result rr = verify_principal_regularity(tp, opt);
    s3_result sr = verify_s3_closure(tp, workers);
    trivial_result tr = verify_trivial_relations(tp, workers);
    bool pass = vr.pass && rr.pass && sr.pass && tr.pass;
    add("defining-conditions", "pass", pass ? "pass" : "fail",
        "defining-conditions");
  }

  name_table nt = build_name_table(g, tp);
  add("naming-bijection", "bijective", nt.bijective ? "bijective" : "collision",
      "naming");

  count_prediction cp = predict_relation_counts(g);
  uint64_t got_t1 = 0, got_t2 = 0, got_big = 0;
  for (uint16_t c = 4; c < cc; ++c) {
    switch (nt.of_class[c].family) {
      case kind::type1: ++got_t1; break;
      case kind::type2: ++got_t2; break;
      case kind::big: ++got_big; break;
      default: break;
    }
  }
  add("type1-classes", std::to_string(cp.type1), std::to_string(got_t1),
      "orbit-counts");
  if (g.k == 2)
    add("type2-classes", std::to_string(cp.type2), std::to_string(got_t2),
        "orbit-counts");
  else
    add("big-classes", cp.big ? "1" : "0", std::to_string(got_big),
        "orbit-counts");
  add("nontrivial-classes", std::to_string(cp.nontrivial),
      std::to_string(cc - 4), "orbit-counts");

  std::vector<valencies> val = reference_valencies(tp);
  uint64_t n3_sum = 0;
  for (uint16_t c = 4; c < cc; ++c) {
    n3_sum += val[c].n3;
    const relation_name& nm = nt.of_class[c];
    std::string predicted =
        nm.family == kind::unnamed
            ? std::string("?")
            : std::to_string(predict_third_valency(g, nm));
    add("n3(" + nm.str() + ")", predicted, std::to_string(val[c].n3),
        "third-valency");
  }
  add("sum n3(nontrivial)", std::to_string(g.space.size - 2),
      std::to_string(n3_sum), "third-valency");

  if (g.k == 2 && nt.bijective) {
    std::unordered_map<uint64_t, uint64_t> tensor;
    for (const auto& e : reference_intersection_numbers(tp))
      tensor[((static_cast<uint64_t>(e.i) * cc + e.j) * cc + e.k) * cc + e.l] =
          e.p;
    auto brute = [&](uint16_t i, uint16_t j, uint16_t k,
                     uint16_t l) -> uint64_t {
      auto it = tensor.find(
          ((static_cast<uint64_t>(i) * cc + j) * cc + k) * cc + l);
      return it == tensor.end() ? 0 : it->second;
    };
    auto class_of = [&](const relation_name& nm) -> uint16_t {
      switch (nm.family) {
        case kind::trivial: return static_cast<uint16_t>(nm.value);
        case kind::type1: return nt.type1_class.at(nm.value);
        default: return nt.type2_class.at(nm.value);
      }
    };
    std::unordered_map<uint16_t, class_histogram_result> sweeps;

    auto emit = [&](const char* source, const relation_name& na,
                    const relation_name& nb, const relation_name& nc,
                    const product_prediction& pp) {
      if (!pp.covered) return;
      uint16_t ci = class_of(na), cj = class_of(nb), ck = class_of(nc);
      std::string base =
          "p[" + na.str() + "," + nb.str() + "," + nc.str() + " -> ";
      for (uint16_t l = 0; l < cc; ++l) {
        uint64_t actual = brute(ci, cj, ck, l);
        std::string quantity = base + nt.of_class[l].str() + "]";
        if (add(quantity, std::to_string(pp.by_class[l]),
                std::to_string(actual), source))
          continue;
        // Mismatch: revalidate the brute value by a full sweep of class l,
        // independent of the representative-based tensor.
        auto it = sweeps.find(l);
        if (it == sweeps.end())
          it = sweeps.emplace(l, class_intersection_histogram(tp, l, workers))
                   .first;
        uint64_t full = 0;
        for (const auto& e : it->second.numbers)
          if (e.i == ci && e.j == cj && e.k == ck) {
            full = e.p;
            break;
          }
        bool agree = it->second.constant && full == actual;
        rep.clean = rep.clean && agree;
        rep.lines.push_back({"revalidate " + quantity, std::to_string(actual),
                             std::to_string(full), agree, "second-oracle"});
      }
    };

    std::vector<relation_name> t1, t2;
    for (const auto& [repv, cls] : nt.type1_class)
      t1.push_back({kind::type1, repv});
    for (const auto& [repv, cls] : nt.type2_class)
      t2.push_back({kind::type2, repv});
    relation_name i1{kind::trivial, 1}, i2{kind::trivial, 2},
        i3{kind::trivial, 3};

    auto nontrivial = [&](const char* source, const relation_name& na,
                          const relation_name& nb, const relation_name& nc) {
      emit(source, na, nb, nc, predict_nontrivial_product(g, nt, na, nb, nc));
    };
    auto one_trivial = [&](const char* source, const relation_name& na,
                           const relation_name& nb, const relation_name& nc) {
      emit(source, na, nb, nc, predict_one_trivial_product(g, nt, na, nb, nc));
    };

    for (const auto& a : t1)
      for (const auto& b : t1)
        for (const auto& c : t1) nontrivial("triple-product-1", a, b, c);
    for (const auto& a : t1)
      for (const auto& b : t1)
        for (const auto& c : t2) nontrivial("triple-product-2", a, b, c);
    for (const auto& a : t1)
      for (const auto& b : t2)
        for (const auto& c : t1) nontrivial("triple-product-2", a, b, c);
    for (const auto& a : t2)
      for (const auto& b : t1)
        for (const auto& c : t1) nontrivial("triple-product-2", a, b, c);
    for (const auto& a : t2)
      for (const auto& b : t2)
        for (const auto& c : t1) nontrivial("triple-product-3", a, b, c);
    for (const auto& a : t2)
      for (const auto& b : t1)
        for (const auto& c : t2) nontrivial("triple-product-4", a, b, c);
    for (const auto& a : t1)
      for (const auto& b : t2)
        for (const auto& c : t2) nontrivial("triple-product-5", a, b, c);
    for (const auto& a : t2)
      for (const auto& b : t2)
        for (const auto& c : t2) nontrivial("triple-product-6", a, b, c);

    for (const auto& a : t1)
      for (const auto& b : t1) one_trivial("one-trivial-1", i1, a, b);
    for (const auto& a : t1)
      for (const auto& b : t1) one_trivial("one-trivial-2", a, i2, b);
    for (const auto& a : t1)
      for (const auto& b : t1) one_trivial("one-trivial-3", a, b, i3);
    for (const auto& a : t1)
      for (const auto& b : t2) one_trivial("one-trivial-4", i1, a, b);
    for (const auto& a : t2)
      for (const auto& b : t1) one_trivial("one-trivial-4", i1, a, b);
    for (const auto& a : t1)
      for (const auto& b : t2) one_trivial("one-trivial-4", a, i2, b);
    for (const auto& a : t2)
      for (const auto& b : t1) one_trivial("one-trivial-4", a, i2, b);
    for (const auto& a : t1)
      for (const auto& b : t2) one_trivial("one-trivial-4", a, b, i3);
    for (const auto& a : t2)
      for (const auto& b : t1) one_trivial("one-trivial-4", a, b, i3);
    for (const auto& a : t2)
      for (const auto& b : t2) one_trivial("one-trivial-5", i1, a, b);
    for (const auto& a : t2)
      for (const auto& b : t2) one_trivial("one-trivial-5", a, i2, b);
    for (const auto& a : t2)
      for (const auto& b : t2) one_trivial("one-trivial-5", a, b, i3);
  }

  if (g.k >= 3) {
    group_spec ga = make_spec(g.t->p(), g.t->alpha(), g.t->omega(), g.k,
                              variant::agl);
    triple_partition tq = label_all_triples(ga, workers);
    compare_result cmp = compare_partitions(tp, tq);
    add("partition vs agl", "equal", verdict_name(cmp.verdict),
        "asl-agl-equality");
  }
  return rep;
}

crosscheck_report run_crosscheck(const group_spec& g, unsigned workers) {
  return run_crosscheck(g, label_all_triples(g, workers), workers);
}

}  // namespace ast
