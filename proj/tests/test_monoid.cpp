#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rankfilt/monoid.hpp"
#include "rankfilt/sset.hpp"

using namespace rankfilt;

namespace {

FPCommMonoid free_monoid(int g) { return FPCommMonoid{g, {}}; }

// circle subdivided into two arcs between two vertices
SSet two_arc_circle(int truncation) {
  SSet s;
  s.truncation_dim = truncation;
  int v0 = s.add_gen(0, "v0");
  int v1 = s.add_gen(0, "v1");
  int a = s.add_gen(1, "a");
  int b = s.add_gen(1, "b");
  s.set_faces(a, {SimplexRef{{}, v1}, SimplexRef{{}, v0}});
  s.set_faces(b, {SimplexRef{{}, v0}, SimplexRef{{}, v1}});
  s.basepoint = v0;
  s.validate();
  return s;
}

}  // namespace

TEST_CASE("group completion of basic presentations") {
  CHECK(group_completion(free_monoid(0)) == AbGroup{0, {}});
  CHECK(group_completion(free_monoid(3)) == AbGroup{3, {}});

  FPCommMonoid b2a{2, {{{0, 1}, {2, 0}}}};  // b = 2a
  CHECK(group_completion(b2a) == AbGroup{1, {}});

  FPCommMonoid tor{1, {{{2}, {0}}}};  // 2a = 0
  CHECK(group_completion(tor) == AbGroup{0, {2}});

  FPCommMonoid noop{2, {{{1, 1}, {1, 1}}}};  // lhs == rhs
  CHECK(group_completion(noop) == AbGroup{2, {}});

  FPCommMonoid bad{2, {{{1}, {1, 0}}}};
  CHECK_FALSE(bad.valid());
  CHECK_THROWS_AS(group_completion(bad), std::invalid_argument);
}

TEST_CASE("group completion is invariant under Tietze moves") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> coef(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    int g = 1 + (int)(rng() % 4);
    int r = (int)(rng() % 4);
    FPCommMonoid m{g, {}};
    for (int k = 0; k < r; ++k) {
      std::vector<int> l(g), rr(g);
      for (int i = 0; i < g; ++i) l[i] = coef(rng);
      for (int i = 0; i < g; ++i) rr[i] = coef(rng);
      m.relations.push_back({l, rr});
    }
    AbGroup base = group_completion(m);

    // add a generator with a defining relation g' = w
    FPCommMonoid plus_gen = m;
    plus_gen.gens = g + 1;
    for (auto& [l, rr] : plus_gen.relations) {
      l.push_back(0);
      rr.push_back(0);
    }
    std::vector<int> w(g + 1, 0), gnew(g + 1, 0);
    for (int i = 0; i < g; ++i) w[i] = coef(rng);
    gnew[g] = 1;
    plus_gen.relations.push_back({gnew, w});
    CHECK(group_completion(plus_gen) == base);

    // add a consequence relation: sum of two existing ones, padded by w
    if (!m.relations.empty()) {
      FPCommMonoid plus_rel = m;
      const auto& [l1, r1] = m.relations[rng() % m.relations.size()];
      const auto& [l2, r2] = m.relations[rng() % m.relations.size()];
      std::vector<int> l(g), rr(g);
      for (int i = 0; i < g; ++i) {
        int pad = coef(rng);
        l[i] = l1[i] + l2[i] + pad;
        rr[i] = r1[i] + r2[i] + pad;
      }
      plus_rel.relations.push_back({l, rr});
      CHECK(group_completion(plus_rel) == base);
    }
  }
}

TEST_CASE("gc_compare decides isomorphism of completions") {
  // N^2 -> <a,b,c | c = a+b>: iso Z^2 -> Z^2
  FPCommMonoid src = free_monoid(2);
  FPCommMonoid dst{3, {{{0, 0, 1}, {1, 1, 0}}}};
  IntMat m(3, 2);
  m.at(0, 0) = 1;
  m.at(1, 1) = 1;
  GcCompare g = gc_compare(MonoidHom{src, dst, m});
  CHECK(g.well_defined);
  CHECK(g.injective);
  CHECK(g.surjective);
  CHECK(g.iso());
  CHECK(g.src_gc == AbGroup{2, {}});
  CHECK(g.dst_gc == AbGroup{2, {}});
}

TEST_CASE("gc_compare detects failures") {
  // doubling N -> N: injective, not surjective
  IntMat two(1, 1);
  two.at(0, 0) = 2;
  GcCompare dbl = gc_compare(MonoidHom{free_monoid(1), free_monoid(1), two});
  CHECK(dbl.well_defined);
  CHECK(dbl.injective);
  CHECK_FALSE(dbl.surjective);
  CHECK_FALSE(dbl.iso());

  // <a,b | a = b> -> N^2 by a -> x, b -> y: not well defined
  FPCommMonoid folded{2, {{{1, 0}, {0, 1}}}};
  IntMat id2(2, 2);
  id2.at(0, 0) = id2.at(1, 1) = 1;
  GcCompare wd = gc_compare(MonoidHom{folded, free_monoid(2), id2});
  CHECK_FALSE(wd.well_defined);

  // N^2 -> N folding both generators: surjective, not injective
  IntMat fold(1, 2);
  fold.at(0, 0) = fold.at(0, 1) = 1;
  GcCompare fj = gc_compare(MonoidHom{free_monoid(2), free_monoid(1), fold});
  CHECK(fj.well_defined);
  CHECK(fj.surjective);
  CHECK_FALSE(fj.injective);

  // same fold, but the source folds at completion level too: iso
  GcCompare fq = gc_compare(MonoidHom{folded, free_monoid(1), fold});
  CHECK(fq.well_defined);
  CHECK(fq.injective);
  CHECK(fq.surjective);
  CHECK(fq.src_gc == AbGroup{1, {}});
}

TEST_CASE("connectivity of the identity map") {
  SSet s2 = sset_model("S2", 4);
  SSetMap id{&s2, &s2, {}};
  for (int g = 0; g < (int)s2.gens.size(); ++g)
    id.gen_image.push_back(SimplexRef{{}, g});
  ConnectivityReport rep = connectivity_compare(id, 3);
  CHECK(rep.connectivity == 3);
  for (int d = 0; d <= 2; ++d) CHECK(rep.verdict[d] == "iso");
  CHECK(rep.verdict[3] == "epi");
}

TEST_CASE("connectivity of the degree two circle map") {
  SSet sub = two_arc_circle(2);
  SSet s1 = sset_model("S1", 2);
  SSetMap f{&sub, &s1, {}};
  f.gen_image = {
      s1.bp_at(0),          // v0
      s1.bp_at(0),          // v1
      SimplexRef{{}, 1},    // a -> the circle edge
      SimplexRef{{}, 1},    // b -> the circle edge
  };
  REQUIRE(is_simplicial(f));
  ConnectivityReport rep = connectivity_compare(f, 1);
  CHECK(rep.cone[0].is_trivial());
  CHECK(rep.cone[1] == AbGroup{0, {2}});  // cokernel of multiplication by 2
  CHECK(rep.verdict[0] == "epi");         // iso needs the next cone degree to vanish
  CHECK(rep.verdict[1] == "fails");
  CHECK(rep.connectivity == 0);
}

TEST_CASE("connectivity of a wedge summand inclusion") {
  SSet s1 = sset_model("S1", 4);
  SSet s2 = sset_model("S2", 4);
  WedgeIndex ix;
  SSet w = wedge(s1, s2, &ix);
  SSetMap inc{&s1, &w, {}};
  for (int g = 0; g < (int)s1.gens.size(); ++g)
    inc.gen_image.push_back(SimplexRef{{}, ix.into[0][g]});
  REQUIRE(is_simplicial(inc));
  ConnectivityReport rep = connectivity_compare(inc, 3);
  CHECK(rep.cone[2] == AbGroup{1, {}});  // the quotient sphere
  CHECK(rep.verdict[0] == "iso");
  CHECK(rep.verdict[1] == "epi");  // iso in fact, but cone degree 2 is nonzero
  CHECK(rep.verdict[2] == "fails");
  CHECK(rep.connectivity == 1);
}

TEST_CASE("connectivity report ignores generator numbering") {
  SSet sub = two_arc_circle(2);
  // same circle, generators introduced in the opposite order
  SSet alt;
  alt.truncation_dim = 2;
  int b = alt.add_gen(1, "b");
  int a = alt.add_gen(1, "a");
  int v1 = alt.add_gen(0, "v1");
  int v0 = alt.add_gen(0, "v0");
  alt.set_faces(a, {SimplexRef{{}, v1}, SimplexRef{{}, v0}});
  alt.set_faces(b, {SimplexRef{{}, v0}, SimplexRef{{}, v1}});
  alt.basepoint = v0;
  alt.validate();

  SSet s1 = sset_model("S1", 2);
  SSetMap f{&sub, &s1, {}};
  f.gen_image = {s1.bp_at(0), s1.bp_at(0), SimplexRef{{}, 1}, SimplexRef{{}, 1}};
  SSetMap g{&alt, &s1, {}};
  g.gen_image = {SimplexRef{{}, 1}, SimplexRef{{}, 1}, s1.bp_at(0), s1.bp_at(0)};
  REQUIRE(is_simplicial(g));
  ConnectivityReport rf = connectivity_compare(f, 1);
  ConnectivityReport rg = connectivity_compare(g, 1);
  CHECK(rf.connectivity == rg.connectivity);
  CHECK(rf.cone[1] == rg.cone[1]);
  CHECK(connectivity_compare(f, 1, false).cone == rf.cone);
}

TEST_CASE("chain map matrices kill degenerate images") {
  SSet s1 = sset_model("S1", 3);
  SSet pt = sset_point(3);
  SSetMap collapse{&s1, &pt, {}};
  collapse.gen_image = {pt.bp_at(0), pt.bp_at(1)};
  REQUIRE(is_simplicial(collapse));
  IntMat f1 = chain_map_matrix(collapse, 1);
  CHECK(f1.rows == 0);  // the point has no nondegenerate 1-simplices
  CHECK(f1.cols == 1);
  // the cone is a suspended circle: collapsing is epi on H_1 but not mono
  ConnectivityReport rep = connectivity_compare(collapse, 2);
  CHECK(rep.verdict[0] == "iso");
  CHECK(rep.verdict[1] == "epi");
  CHECK(rep.verdict[2] == "fails");
  CHECK(rep.cone[2] == AbGroup{1, {}});
  CHECK(rep.connectivity == 1);
}
