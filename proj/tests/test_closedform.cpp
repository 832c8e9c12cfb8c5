#include "ast/closedform.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "doctest.h"

using namespace ast;
using kind = relation_name::kind;

namespace {

std::map<std::array<uint16_t, 4>, uint64_t> tensor_map(
    const std::vector<intersection_entry>& entries) {
  std::map<std::array<uint16_t, 4>, uint64_t> m;
  for (const auto& e : entries) m[{e.i, e.j, e.k, e.l}] = e.p;
  return m;
}

uint64_t brute(const std::map<std::array<uint16_t, 4>, uint64_t>& t, uint16_t i,
               uint16_t j, uint16_t k, uint16_t l) {
  auto it = t.find({i, j, k, l});
  return it == t.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("relation name strings") {
  CHECK(relation_name{kind::trivial, 2}.str() == "R2");
  CHECK(relation_name{kind::type1, 5}.str() == "R^5");
  CHECK(relation_name{kind::type2, 3}.str() == "^3R");
  CHECK(relation_name{kind::big, 4}.str() == "BIG");
  CHECK(relation_name{kind::unnamed, 9}.str() == "C9");
}

TEST_CASE("predicted relation counts") {
  count_prediction c = predict_relation_counts(make_spec(2, 2, 1, 2, variant::asl));
  CHECK(c.type1 == 1);
  CHECK(c.type2 == 2);
  CHECK(!c.big);
  CHECK(c.nontrivial == 3);

  c = predict_relation_counts(make_spec(2, 3, 1, 2, variant::asl));
  CHECK(c.type1 == 2);
  CHECK(c.type2 == 3);
  CHECK(c.nontrivial == 5);

  c = predict_relation_counts(make_spec(3, 1, 1, 2, variant::asl));
  CHECK(c.type1 == 1);
  CHECK(c.type2 == 2);
  CHECK(c.nontrivial == 3);

  c = predict_relation_counts(make_spec(2, 1, 1, 3, variant::asl));
  CHECK(c.type1 == 0);
  CHECK(c.big);
  CHECK(c.nontrivial == 1);

  c = predict_relation_counts(make_spec(2, 2, 1, 3, variant::asl));
  CHECK(c.type1 == 1);
  CHECK(c.big);
  CHECK(c.nontrivial == 2);
}

TEST_CASE("name table is a bijection matching predicted counts") {
  for (auto [p, alpha, omega, k] :
       {std::array<uint32_t, 4>{2, 1, 1, 2}, {3, 1, 1, 2}, {2, 2, 1, 2},
        {2, 3, 1, 2}, {3, 2, 1, 2}, {2, 2, 2, 2}, {2, 1, 1, 3}, {2, 2, 1, 3}}) {
    group_spec g = make_spec(p, alpha, omega, k, variant::asl);
    triple_partition tp = label_all_triples(g);
    name_table nt = build_name_table(g, tp);
    CHECK(nt.bijective);
    count_prediction c = predict_relation_counts(g);
    CHECK(nt.type1_class.size() == c.type1);
    if (k == 2) {
      CHECK(nt.type2_class.size() == c.type2);
      CHECK(nt.big_class == -1);
    } else {
      CHECK(nt.type2_class.empty());
      CHECK(nt.big_class >= 4);
    }
    CHECK(tp.class_count == 4 + c.nontrivial);
    for (uint16_t cls = 0; cls < 4; ++cls) {
      CHECK(nt.of_class[cls].family == kind::trivial);
      CHECK(nt.of_class[cls].value == cls);
    }
  }
}

TEST_CASE("gf(4) name table layout") {
  group_spec g = make_spec(2, 2, 1, 2, variant::asl);
  triple_partition tp = label_all_triples(g);
  name_table nt = build_name_table(g, tp);
  // transversal reps of gf(4) under the order-2 subgroup: 0, 1, g (g enc 2)
  REQUIRE(nt.type1_class.count(2) == 1);
  REQUIRE(nt.type2_class.count(1) == 1);
  REQUIRE(nt.type2_class.count(2) == 1);
  std::set<std::string> names;
  for (const auto& nm : nt.of_class) names.insert(nm.str());
  CHECK(names == std::set<std::string>{"R0", "R1", "R2", "R3", "R^2", "^1R", "^2R"});
}

TEST_CASE("predicted third valencies match the brute counts") {
  for (auto [p, alpha, omega, k] :
       {std::array<uint32_t, 4>{2, 2, 1, 2}, {3, 2, 1, 2}, {2, 3, 1, 2},
        {2, 2, 2, 2}, {2, 1, 1, 3}, {2, 2, 1, 3}}) {
    group_spec g = make_spec(p, alpha, omega, k, variant::asl);
    triple_partition tp = label_all_triples(g);
    name_table nt = build_name_table(g, tp);
    REQUIRE(nt.bijective);
    auto val = reference_valencies(tp);
    uint64_t sum = 0;
    for (uint16_t c = 4; c < tp.class_count; ++c) {
      uint64_t predicted = predict_third_valency(g, nt.of_class[c]);
      CHECK(predicted == val[c].n3);
      sum += predicted;
    }
    CHECK(sum == g.space.size - 2);
  }
  group_spec g3 = make_spec(2, 2, 1, 3, variant::asl);
  triple_partition tp3 = label_all_triples(g3);
  name_table nt3 = build_name_table(g3, tp3);
  CHECK(predict_third_valency(g3, nt3.of_class[nt3.big_class]) == 60);
  CHECK_THROWS_AS(predict_third_valency(g3, relation_name{kind::trivial, 1}),
                  std::invalid_argument);
}

TEST_CASE("product operand validation and coverage") {
  group_spec g = make_spec(2, 2, 1, 2, variant::asl);
  triple_partition tp = label_all_triples(g);
  name_table nt = build_name_table(g, tp);
  relation_name t1{kind::type1, 2}, t2{kind::type2, 1}, r1{kind::trivial, 1},
      r0{kind::trivial, 0}, r2{kind::trivial, 2};
  CHECK_THROWS_AS(predict_nontrivial_product(g, nt, r1, t1, t1),
                  std::invalid_argument);
  CHECK_THROWS_AS(predict_one_trivial_product(g, nt, t1, t2, t2),
                  std::invalid_argument);
  CHECK(!predict_one_trivial_product(g, nt, r0, t1, t1).covered);
  CHECK(!predict_one_trivial_product(g, nt, t1, r1, t1).covered);  // off slot
  CHECK(!predict_one_trivial_product(g, nt, r1, r2, t1).covered);  // two trivials
  CHECK(predict_one_trivial_product(g, nt, r1, t1, t1).covered);
  CHECK(predict_one_trivial_product(g, nt, t1, r2, t1).covered);
  CHECK(predict_one_trivial_product(g, nt, t2, t1, relation_name{kind::trivial, 3})
            .covered);

  // one type2 anywhere among three nontrivial operands vanishes
  product_prediction zero = predict_nontrivial_product(g, nt, t1, t2, t1);
  CHECK(zero.covered);
  CHECK(zero.item == 2);
  for (uint64_t v : zero.by_class) CHECK(v == 0);

  group_spec gk3 = make_spec(2, 2, 1, 3, variant::asl);
  triple_partition tpk3 = label_all_triples(gk3);
  name_table ntk3 = build_name_table(gk3, tpk3);
  CHECK(!predict_nontrivial_product(gk3, ntk3, t1, t1, t1).covered);
  CHECK(!predict_one_trivial_product(gk3, ntk3, r1, t1, t1).covered);
}

TEST_CASE("every covered product is exact when the subgroup is trivial") {
  // singleton orbits make pair counting and element counting coincide, so
  // every formula agrees with brute force on the nose
  group_spec g = make_spec(5, 1, 1, 2, variant::asl);
  triple_partition tp = label_all_triples(g);
  name_table nt = build_name_table(g, tp);
  REQUIRE(nt.bijective);
  auto tensor = tensor_map(reference_intersection_numbers(tp));
  std::vector<relation_name> nontrivial;
  for (uint16_t c = 4; c < tp.class_count; ++c) nontrivial.push_back(nt.of_class[c]);
  auto class_of = [&](const relation_name& nm) -> uint16_t {
    return nm.family == kind::type1 ? nt.type1_class.at(nm.value)
                                    : nt.type2_class.at(nm.value);
  };
  for (const auto& a : nontrivial)
    for (const auto& b : nontrivial)
      for (const auto& c : nontrivial) {
        product_prediction pp = predict_nontrivial_product(g, nt, a, b, c);
        REQUIRE(pp.covered);
        for (uint16_t l = 0; l < tp.class_count; ++l)
          CHECK(pp.by_class[l] ==
                brute(tensor, class_of(a), class_of(b), class_of(c), l));
      }
}

TEST_CASE("gf(4) pinned brute values expose the two scaled formulas") {
  group_spec g = make_spec(2, 2, 1, 2, variant::asl);
  triple_partition tp = label_all_triples(g);
  name_table nt = build_name_table(g, tp);
  auto tensor = tensor_map(reference_intersection_numbers(tp));
  uint16_t c_t1 = nt.type1_class.at(2);   // R^g
  uint16_t c_u1 = nt.type2_class.at(1);   // ^1R
  uint16_t c_ug = nt.type2_class.at(2);   // ^gR
  relation_name n_u1{kind::type2, 1}, n_ug{kind::type2, 2};

  // all-type2 product, type-1 output row: brute force counts 4, the
  // subgroup-pair formula predicts q * 1 = 2
  CHECK(brute(tensor, c_u1, c_ug, c_ug, c_t1) == 4);
  product_prediction p6 = predict_nontrivial_product(g, nt, n_u1, n_ug, n_ug);
  CHECK(p6.item == 6);
  CHECK(p6.by_class[c_t1] == 2);

  // all-type2 product, type-2 output row: brute counts ordered pairs (2),
  // the formula counts distinct first factors (1)
  CHECK(brute(tensor, c_ug, c_u1, c_ug, c_u1) == 2);
  product_prediction p6b = predict_nontrivial_product(g, nt, n_ug, n_u1, n_ug);
  CHECK(p6b.by_class[c_u1] == 1);

  // slot-matched trivial with two type-2 operands: brute 4 vs q-scaled 2
  CHECK(brute(tensor, 1, c_u1, c_u1, 1) == 4);
  product_prediction p15 =
      predict_one_trivial_product(g, nt, relation_name{kind::trivial, 1}, n_u1, n_u1);
  CHECK(p15.item == 105);
  CHECK(p15.by_class[1] == 2);
  for (uint16_t l = 0; l < tp.class_count; ++l)
    if (l != 1) CHECK(p15.by_class[l] == 0);
}

TEST_CASE("crosscheck is clean when the subgroup acts trivially or fully") {
  for (auto [p, alpha, omega, k] :
       {std::array<uint32_t, 4>{5, 1, 1, 2}, {2, 2, 2, 2}, {3, 1, 1, 2},
        {2, 1, 1, 2}}) {
    group_spec g = make_spec(p, alpha, omega, k, variant::asl);
    crosscheck_report rep = run_crosscheck(g);
    CHECK(rep.clean);
    for (const auto& line : rep.lines) CHECK(line.match);
  }
}

TEST_CASE("crosscheck requires the determinant-one variant") {
  group_spec g = make_spec(2, 2, 1, 2, variant::agl);
  CHECK_THROWS_AS(run_crosscheck(g), std::invalid_argument);
}

TEST_CASE("crosscheck mismatches are confined to the two scaled formulas") {
  for (auto [p, alpha, omega, k] :
       {std::array<uint32_t, 4>{2, 2, 1, 2}, {3, 2, 1, 2}}) {
    group_spec g = make_spec(p, alpha, omega, k, variant::asl);
    crosscheck_report rep = run_crosscheck(g);
    CHECK(!rep.clean);
    size_t mismatches = 0, revalidations = 0;
    std::set<std::string> sources;
    for (const auto& line : rep.lines) {
      if (line.source == "second-oracle") {
        ++revalidations;
        CHECK(line.match);  // the sweep agrees with the representative table
        continue;
      }
      if (!line.match) {
        ++mismatches;
        sources.insert(line.source);
      }
    }
    CHECK(mismatches > 0);
    CHECK(revalidations == mismatches);
    CHECK(sources ==
          std::set<std::string>{"triple-product-6", "one-trivial-5"});
  }
}

TEST_CASE("crosscheck compares the k >= 3 partition against the full group") {
  group_spec g = make_spec(2, 1, 1, 3, variant::asl);
  crosscheck_report rep = run_crosscheck(g);
  CHECK(rep.clean);
  bool saw_equality = false;
  for (const auto& line : rep.lines)
    if (line.source == "asl-agl-equality") {
      saw_equality = true;
      CHECK(line.match);
      CHECK(line.predicted == "equal");
    }
  CHECK(saw_equality);
}

TEST_CASE("pinned crosscheck line format") {
  group_spec g = make_spec(2, 2, 1, 2, variant::asl);
  crosscheck_report rep = run_crosscheck(g);
  bool saw = false, saw_reval = false;
  for (const auto& line : rep.lines) {
    if (line.quantity == "p[^1R,^2R,^2R -> R^2]") {
      saw = true;
      CHECK(line.predicted == "2");
      CHECK(line.actual == "4");
      CHECK(!line.match);
      CHECK(line.source == "triple-product-6");
    }
    if (line.quantity == "revalidate p[^1R,^2R,^2R -> R^2]") {
      saw_reval = true;
      CHECK(line.match);
    }
  }
  CHECK(saw);
  CHECK(saw_reval);
}
