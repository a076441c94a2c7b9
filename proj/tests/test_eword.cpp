#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "rankfilt/eword.hpp"

using namespace rankfilt;

namespace {

std::vector<EWord> all_words(int arity, int dim) {
  std::vector<EWord> out = {{arity, {}}};
  auto perms = all_perms(arity);
  for (int t = 0; t <= dim; ++t) {
    std::vector<EWord> next;
    for (const EWord& w : out)
      for (const Perm& p : perms) {
        EWord u = w;
        u.entries.push_back(p);
        next.push_back(u);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("permutation basics") {
  CHECK(all_perms(3).size() == 6);
  CHECK(perm_is_identity(perm_identity(4)));
  for (const Perm& p : all_perms(4)) {
    CHECK(perm_is_identity(perm_compose(p, perm_inverse(p))));
    CHECK(perm_is_identity(perm_compose(perm_inverse(p), p)));
  }
  for (const Perm& p : all_perms(3))
    for (const Perm& q : all_perms(3))
      for (const Perm& r : all_perms(3))
        CHECK(perm_compose(perm_compose(p, q), r) == perm_compose(p, perm_compose(q, r)));
}

TEST_CASE("restriction is functorial along composable injections") {
  // keep two of three positions, then one of two; equals the composite keep
  for (const Perm& p : all_perms(3))
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        std::vector<int> keep2 = {a, b};
        Perm q = perm_restrict(p, keep2);
        for (int c = 0; c < 2; ++c) {
          std::vector<int> keep1 = {c};
          std::vector<int> composite = {keep2[c]};
          CHECK(perm_restrict(q, keep1) == perm_restrict(p, composite));
        }
      }
  // restricting along everything is the identity operation
  for (const Perm& p : all_perms(4)) CHECK(perm_restrict(p, {0, 1, 2, 3}) == p);
  // restriction to the empty set
  CHECK(perm_restrict(all_perms(3)[4], {}).empty());
}

TEST_CASE("word faces and degeneracies satisfy the simplicial identities") {
  for (const EWord& w : all_words(2, 2)) {
    CHECK(w.valid());
    int d = w.dim();
    for (int j = 1; j <= d; ++j)
      for (int i = 0; i < j; ++i)
        CHECK(eword_face(eword_face(w, j), i) == eword_face(eword_face(w, i), j - 1));
    for (int j = 0; j <= d; ++j) {
      EWord sw = eword_degeneracy(w, j);
      CHECK(eword_face(sw, j) == w);
      CHECK(eword_face(sw, j + 1) == w);
      for (int i = 0; i < j; ++i)
        CHECK(eword_face(sw, i) == eword_degeneracy(eword_face(w, i), j - 1));
      for (int i = j + 2; i <= d + 1; ++i)
        CHECK(eword_face(sw, i) == eword_degeneracy(eword_face(w, i - 1), j));
    }
    for (int i = 0; i <= d; ++i)
      for (int j = i; j <= d; ++j)
        CHECK(eword_degeneracy(eword_degeneracy(w, j), i) ==
              eword_degeneracy(eword_degeneracy(w, i), j + 1));
  }
}

TEST_CASE("block permutation on a hand example") {
  // swap of two blocks of widths 1 and 2
  Perm swap = {1, 0};
  CHECK(block_perm(swap, {1, 2}) == Perm{2, 0, 1});
  CHECK(block_perm(swap, {2, 1}) == Perm{1, 2, 0});
  CHECK(block_perm(perm_identity(3), {2, 0, 1}) == perm_identity(3));
}

TEST_CASE("operadic composition") {
  SUBCASE("units") {
    for (const EWord& w : all_words(3, 1)) {
      std::vector<EWord> units(3, eword_identity(1, w.dim()));
      CHECK(operad_compose(w, units) == w);
      CHECK(operad_compose(eword_identity(1, w.dim()), {w}) == w);
    }
  }
  SUBCASE("associativity") {
    // gamma(gamma(a; b1, b2); c...) = gamma(a; gamma(b1, c..), gamma(b2, c..))
    for (const EWord& a : all_words(2, 1))
      for (const EWord& b1 : all_words(2, 1))
        for (const EWord& b2 : all_words(1, 1))
          for (const EWord& c1 : all_words(1, 1))
            for (const EWord& c2 : all_words(2, 1)) {
              EWord c3 = eword_identity(1, 1);
              EWord lhs = operad_compose(operad_compose(a, {b1, b2}), {c1, c2, c3});
              EWord rhs =
                  operad_compose(a, {operad_compose(b1, {c1, c2}), operad_compose(b2, {c3})});
              CHECK(lhs == rhs);
            }
  }
  SUBCASE("identity led words are closed under composition") {
    for (const EWord& a : all_words(2, 1))
      for (const EWord& b1 : all_words(2, 1))
        for (const EWord& b2 : all_words(1, 1)) {
          if (!a.id_led() || !b1.id_led() || !b2.id_led()) continue;
          CHECK(operad_compose(a, {b1, b2}).id_led());
        }
  }
  SUBCASE("composition commutes with faces and degeneracies") {
    for (const EWord& a : all_words(2, 1))
      for (const EWord& b1 : all_words(1, 1))
        for (const EWord& b2 : all_words(2, 1)) {
          for (int i = 0; i <= 1; ++i)
            CHECK(eword_face(operad_compose(a, {b1, b2}), i) ==
                  operad_compose(eword_face(a, i), {eword_face(b1, i), eword_face(b2, i)}));
          for (int i = 0; i <= 1; ++i)
            CHECK(eword_degeneracy(operad_compose(a, {b1, b2}), i) ==
                  operad_compose(eword_degeneracy(a, i),
                                 {eword_degeneracy(b1, i), eword_degeneracy(b2, i)}));
        }
  }
}

TEST_CASE("free right translation and the identity led representative") {
  for (const EWord& w : all_words(3, 1)) {
    // freeness: only the identity stabilizes
    for (const Perm& rho : all_perms(3))
      if (!perm_is_identity(rho)) CHECK(eword_translate(w, rho) != w);
    // exactly one translate is identity led
    int led = 0;
    for (const Perm& rho : all_perms(3)) led += eword_translate(w, rho).id_led() ? 1 : 0;
    CHECK(led == 1);
    // and it is reached by the inverse of the leading entry
    EWord canon = eword_translate(w, perm_inverse(w.entries[0]));
    CHECK(canon.id_led());
  }
}

TEST_CASE("restriction commutes with faces") {
  for (const EWord& w : all_words(3, 1))
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        for (int i = 0; i <= 1; ++i)
          CHECK(eword_face(eword_restrict(w, {a, b}), i) ==
                eword_restrict(eword_face(w, i), {a, b}));
}
