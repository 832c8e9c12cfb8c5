#include "ast/gf.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ast/common.hpp"
#include "doctest.h"

using ast::build_tower;
using ast::tower;

namespace {

void check_field_axioms(const tower& t) {
  uint32_t n = t->n();
  REQUIRE(n <= 128);  // keep the exhaustive triple loop cheap
  for (uint32_t a = 0; a < n; ++a) {
    CHECK(t->add(a, 0) == a);
    CHECK(t->mul(a, 1) == a);
    CHECK(t->mul(a, 0) == 0);
    CHECK(t->add(a, t->neg(a)) == 0);
    if (a != 0) CHECK(t->mul(a, t->inv(a)) == 1);
    for (uint32_t b = 0; b < n; ++b) {
      CHECK(t->add(a, b) == t->add(b, a));
      CHECK(t->mul(a, b) == t->mul(b, a));
      for (uint32_t c = 0; c < n; ++c) {
        CHECK(t->add(t->add(a, b), c) == t->add(a, t->add(b, c)));
        CHECK(t->mul(t->mul(a, b), c) == t->mul(a, t->mul(b, c)));
        CHECK(t->mul(a, t->add(b, c)) == t->add(t->mul(a, b), t->mul(a, c)));
      }
    }
  }
}

}  // namespace

TEST_CASE("tower construction validates arguments") {
  CHECK_THROWS_AS(build_tower(4, 1, 1), std::invalid_argument);   // p composite
  CHECK_THROWS_AS(build_tower(2, 3, 2), std::invalid_argument);   // omega !| alpha
  CHECK_THROWS_AS(build_tower(2, 2, 0), std::invalid_argument);   // omega  < 1
  CHECK_THROWS_AS(build_tower(2, 17, 1), ast::bound_error);       // n > 2^16
}

TEST_CASE("field axioms hold exhaustively") {
  check_field_axioms(build_tower(2, 2, 1));
  check_field_axioms(build_tower(2, 3, 1));
  check_field_axioms(build_tower(2, 4, 2));
  check_field_axioms(build_tower(3, 2, 1));
  check_field_axioms(build_tower(5, 1, 1));
  check_field_axioms(build_tower(7, 1, 1));
}

TEST_CASE("gf(4) multiplication table") {
  tower t = build_tower(2, 2, 1);
  // elements 0, 1, g = x, g^2 = x + 1 encoded 0, 1, 2, 3
  CHECK(t->generator() == 2);
  CHECK(t->mul(2, 2) == 3);
  CHECK(t->mul(2, 3) == 1);
  CHECK(t->add(2, 3) == 1);
  CHECK(t->inv(2) == 3);
  CHECK(t->frobenius(2) == 3);
  CHECK(t->frobenius(3) == 2);
  CHECK(t->frobenius(1) == 1);
}

TEST_CASE("prime field encodings are plain residues") {
  tower t = build_tower(5, 1, 1);
  for (uint32_t a = 0; a < 5; ++a)
    for (uint32_t b = 0; b < 5; ++b) {
      CHECK(t->add(a, b) == (a + b) % 5);
      CHECK(t->mul(a, b) == a * b % 5);
    }
}

TEST_CASE("frobenius is a field automorphism with the right fixed field") {
  for (auto [p, alpha, omega] :
       {std::array<uint32_t, 3>{2, 4, 2}, {2, 6, 2}, {3, 2, 1}, {2, 4, 1}}) {
    tower t = build_tower(p, alpha, omega);
    uint32_t n = t->n();
    for (uint32_t a = 0; a < n; ++a) {
      CHECK(t->frobenius_iter(a, t->alpha()) == a);  // full circle
      for (uint32_t b = 0; b < n; ++b) {
        CHECK(t->frobenius(t->add(a, b)) ==
              t->add(t->frobenius(a), t->frobenius(b)));
        CHECK(t->frobenius(t->mul(a, b)) ==
              t->mul(t->frobenius(a), t->frobenius(b)));
      }
    }
    // the fixed field of a -> a^q has exactly q elements, closed under ops
    ast::galois_subgroup h(t);
    CHECK(h.order == alpha / omega);
    std::set<uint32_t> fixed;
    for (uint32_t a = 0; a < n; ++a)
      if (h.apply(1, a) == a || h.order == 1) fixed.insert(a);
    CHECK(fixed.size() == t->q());
    for (uint32_t a : fixed)
      for (uint32_t b : fixed) {
        CHECK(fixed.count(t->add(a, b)));
        CHECK(fixed.count(t->mul(a, b)));
      }
  }
}

TEST_CASE("orbit sizes are degrees and sum to n-1 off zero") {
  for (auto [p, alpha, omega] :
       {std::array<uint32_t, 3>{2, 2, 1}, {2, 4, 2}, {2, 3, 1}, {3, 2, 1},
        {2, 4, 1}, {2, 6, 3}}) {
    tower t = build_tower(p, alpha, omega);
    ast::galois_subgroup h(t);
    ast::transversal tv = ast::h_orbit_transversal(h);
    CHECK(tv.rep_of[0] == 0);
    uint64_t sum = 0;
    std::set<uint32_t> seen;
    for (uint32_t rep : tv.representatives) {
      auto orbit = ast::h_orbit_values(h, rep);
      CHECK(orbit.size() == ast::degree_over_subfield(h, rep));
      CHECK(*std::min_element(orbit.begin(), orbit.end()) == rep);
      for (uint32_t v : orbit) {
        CHECK(tv.rep_of[v] == rep);
        CHECK(seen.insert(v).second);
      }
      if (rep != 0) sum += orbit.size();
    }
    CHECK(seen.size() == t->n());
    CHECK(sum == t->n() - 1);
    // burnside count equals the actual orbit count
    CHECK(ast::burnside_orbit_count(t->q(), h.order) ==
          tv.representatives.size());
  }
}

TEST_CASE("burnside orbit counts") {
  CHECK(ast::burnside_orbit_count(2, 1) == 2);
  CHECK(ast::burnside_orbit_count(2, 2) == 3);
  CHECK(ast::burnside_orbit_count(2, 3) == 4);
  CHECK(ast::burnside_orbit_count(2, 4) == 6);
  CHECK(ast::burnside_orbit_count(3, 2) == 6);
  CHECK(ast::burnside_orbit_count(4, 2) == 10);
}

TEST_CASE("gf(16) over gf(4) degrees") {
  tower t = build_tower(2, 4, 2);
  ast::galois_subgroup h(t);
  // the four gf(4) elements have degree 1, everything else degree 2
  uint32_t deg1 = 0, deg2 = 0;
  for (uint32_t a = 0; a < 16; ++a) {
    uint32_t d = ast::degree_over_subfield(h, a);
    CHECK((d == 1 || d == 2));
    (d == 1 ? deg1 : deg2)++;
  }
  CHECK(deg1 == 4);
  CHECK(deg2 == 12);
}

TEST_CASE("log and exp are inverse") {
  for (auto [p, alpha, omega] :
       {std::array<uint32_t, 3>{2, 3, 1}, {3, 2, 1}, {5, 2, 1}}) {
    tower t = build_tower(p, alpha, omega);
    for (uint32_t a = 1; a < t->n(); ++a) CHECK(t->exp(t->log(a)) == a);
    for (uint32_t e = 0; e + 1 < t->n(); ++e) CHECK(t->log(t->exp(e)) == e);
  }
}
