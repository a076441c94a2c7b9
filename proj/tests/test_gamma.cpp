#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "rankfilt/gamma.hpp"

using namespace rankfilt;

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

EvalBounds bounds(int max_dim = 1, int max_filt = 2, int outer_cap = 3) {
  EvalBounds b;
  b.max_dim = max_dim;
  b.max_filt = max_filt;
  b.outer_cap = outer_cap;
  return b;
}

// inclusion of one wedge arm at the base level
SSetMap arm_inclusion(const BaseSpace& wedge, int side, const FilteredSSet& arm) {
  SSetMap f{&arm.s, &wedge.fs->s, {}};
  for (std::size_t g = 0; g < arm.s.gens.size(); ++g)
    f.gen_image.push_back(SimplexRef{{}, wedge.widx->into[side][g]});
  return f;
}

}  // namespace

TEST_CASE("functor expressions parse and print") {
  CHECK(gamma_parse("C . filt(2) . Sp").str() == "C . filt(2) . Sp");
  CHECK(gamma_parse("  C.filt( 2 ).Sp ").str() == "C . filt(2) . Sp");
  CHECK(gamma_parse("Sp(3)").atoms[0].kind == FunctorAtom::SpM);
  CHECK(gamma_parse("Sp(3)").atoms[0].m == 3);
  CHECK(gamma_parse("Id").atoms.size() == 1);
  CHECK(gamma_parse("C . C . Sp").atoms.size() == 3);
  CHECK_THROWS_AS(gamma_parse("Q"), std::invalid_argument);
  CHECK_THROWS_AS(gamma_parse("C ."), std::invalid_argument);
  CHECK_THROWS_AS(gamma_parse("C extra"), std::invalid_argument);
  CHECK_THROWS_AS(gamma_parse("filt"), std::invalid_argument);
  CHECK_THROWS_AS(gamma_parse("filt(x)"), std::invalid_argument);
  CHECK_THROWS_AS(gamma_parse(""), std::invalid_argument);
}

TEST_CASE("base spaces parse to the expected models") {
  EvalBounds b = bounds();
  CHECK(base_parse("S0", b).fs->s.by_dim[0].size() == 2);
  CHECK(base_parse("point", b).fs->s.gens.size() == 1);
  CHECK(base_parse("fin(3)", b).fs->s.by_dim[0].size() == 4);

  BaseSpace w = base_parse("S0 v S0", b);
  CHECK(w.is_wedge());
  CHECK(w.fs->s.by_dim[0].size() == 3);
  CHECK(w.widx->into.size() == 2);

  BaseSpace nested = base_parse("(S0 v S0) v fin(2)", b);
  CHECK(nested.fs->s.by_dim[0].size() == 5);

  // Sp(m, A): the filtered symmetric product as a new base
  BaseSpace sp = base_parse("Sp(2, S2)", b);
  CHECK(sp.fs->s.by_dim[0].size() == 1);
  CHECK(sp.fs->s.by_dim[2].size() == 2);
  CHECK_FALSE(sp.is_wedge());

  CHECK_THROWS_AS(base_parse("garbage", b), std::invalid_argument);
  CHECK_THROWS_AS(base_parse("S0 v", b), std::invalid_argument);
  CHECK_THROWS_AS(base_parse("Sp(9, S0)", b), BoundExhausted);
}

TEST_CASE("bounded evaluation produces the expected point counts") {
  EvalBounds b = bounds();

  // identity: same generators as the base
  EvalResult id = eval_expr(gamma_parse("Id"), base_parse("S1", b), b);
  CHECK(id.mat.fs.s.gens.size() == 2);
  CHECK(id.mat.fs.s.by_dim[1].size() == 1);

  // vertices of filter_2 Sp(S0 v S0): multisets over two letters, size <= 2
  EvalResult st = eval_expr(gamma_parse("filt(2) . Sp"), base_parse("S0 v S0", b), b);
  CHECK(st.mat.fs.s.by_dim[0].size() == 6);

  // vertices of Sp(m) on fin(n): multisets of size <= m from n letters
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 3; ++n) {
      EvalResult e = eval_expr(gamma_parse("Sp(" + std::to_string(m) + ")"),
                               base_parse("fin(" + std::to_string(n) + ")", b), b);
      CHECK((long long)e.mat.fs.s.by_dim[0].size() == binom(n + m, m));
    }

  // C and Sp of the point are the point
  CHECK(eval_expr(gamma_parse("C"), base_parse("point", b), b).mat.fs.s.gens.size() == 1);
  CHECK(eval_expr(gamma_parse("Sp"), base_parse("point", b), b).mat.fs.s.gens.size() == 1);

  // parallel and serial materializations agree
  EvalResult p = eval_expr(gamma_parse("C . filt(2) . Sp"), base_parse("S0 v S0", b), b, true);
  EvalResult s = eval_expr(gamma_parse("C . filt(2) . Sp"), base_parse("S0 v S0", b), b, false);
  REQUIRE(p.mat.fs.s.gens.size() == s.mat.fs.s.gens.size());
  CHECK(p.mat.gen_value == s.mat.gen_value);
  CHECK(p.mat.fs.phi == s.mat.fs.phi);
}

TEST_CASE("resource bounds stop evaluation instead of clipping it") {
  EvalBounds b = bounds();
  BaseSpace s0 = base_parse("S0", b);
  CHECK_THROWS_AS(apply_expr(gamma_parse("filt(5) . Sp"), space_base(s0.fs.get()), b),
                  BoundExhausted);
  CHECK_THROWS_AS(apply_expr(gamma_parse("Sp(5)"), space_base(s0.fs.get()), b),
                  BoundExhausted);

  BaseSpace w = base_parse("S0 v S0", b);
  Space sp = apply_expr(gamma_parse("Sp"), space_base(w.fs.get()), b);
  CHECK_THROWS_AS(enumerate_guarded(sp, 2, b), BoundExhausted);

  EvalBounds tiny = bounds();
  tiny.simplex_cap = 4;
  CHECK_THROWS_AS(enumerate_guarded(sp, 0, tiny), BoundExhausted);
  CHECK_THROWS_AS(eval_expr(gamma_parse("Sp"), base_parse("S0 v S0", tiny), tiny),
                  BoundExhausted);
}

TEST_CASE("pi0 freeness certificates") {
  EvalBounds b = bounds();

  // C filter_2 Sp(S0 v S0): free commutative monoid on five generators
  EvalResult non = eval_expr(gamma_parse("C . filt(2) . Sp"), base_parse("S0 v S0", b), b);
  Pi0Free pf = pi0_free(non);
  REQUIRE(pf.applicable);
  CHECK(pf.gens == 5);
  CHECK(pf.edges_consistent);
  CHECK(pf.free_verified);
  // generator weights 1,1,2,2,2; multisets of total weight <= 3
  CHECK(pf.expected_classes == 19);
  CHECK(pf.classes.classes == 19);
  FPCommMonoid m = pf.monoid();
  CHECK(m.gens == 5);
  CHECK(m.relations.empty());
  CHECK(group_completion(m) == AbGroup{5, {}});

  // C(S0 v S0): free on the two non-basepoint components
  EvalResult cw = eval_expr(gamma_parse("C"), base_parse("S0 v S0", b), b);
  Pi0Free pc = pi0_free(cw);
  REQUIRE(pc.applicable);
  CHECK(pc.gens == 2);
  CHECK(pc.free_verified);
  CHECK(pc.expected_classes == 10);

  // a bare base tower has no built-in free structure to certify
  EvalResult idr = eval_expr(gamma_parse("Id"), base_parse("S0 v S0", b), b);
  CHECK_FALSE(pi0_free(idr).applicable);
}

TEST_CASE("lambda of the identity functor is the wedge-into-product map") {
  EvalBounds b = bounds();
  Linearization lin = linearization_lambda(gamma_parse("Id"), base_parse("S0", b),
                                           base_parse("S0", b), b);
  CHECK(is_simplicial(lin.assembled));
  std::string why;
  CHECK(is_filtered_map(lin.assembled, lin.on_wedge->mat.fs, *lin.staged_product, &why));
  CHECK_FALSE(is_isomorphism(lin.assembled));
  // the two non-basepoint vertices keep distinct images
  std::set<SimplexRef> images(lin.assembled.gen_image.begin(),
                              lin.assembled.gen_image.end());
  CHECK(images.size() == lin.assembled.gen_image.size());
}

TEST_CASE("lambda on symmetric product towers splits multisets by side") {
  EvalBounds b = bounds();
  Linearization lin = linearization_lambda(gamma_parse("Sp"), base_parse("fin(2)", b),
                                           base_parse("fin(1)", b), b);
  const WedgeIndex& widx = *lin.on_wedge->base.widx;
  const SSet& ws = lin.on_wedge->mat.fs.s;
  for (std::size_t g = 0; g < ws.gens.size(); ++g) {
    int d = ws.gens[g].dim;
    const Value& v = lin.on_wedge->mat.gen_value[g];
    std::vector<Value> px, py;
    if (v.kind == VK::SpPt) {
      for (const Value& e : v.kids) {
        auto [side, orig] = widx.from[e.ref.gen];
        (side == 0 ? px : py).push_back(v_base(SimplexRef{e.ref.word, orig}));
      }
    }
    Value ex = canon(lin.on_x->space, v_sppt(px));
    Value ey = canon(lin.on_y->space, v_sppt(py));
    CHECK(lin.to_x.gen_image[g] == lin.on_x->mat.ref_of(ex, d));
    CHECK(lin.to_y.gen_image[g] == lin.on_y->mat.ref_of(ey, d));
  }
}

TEST_CASE("the symmetric product is special: lambda is an isomorphism") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      EvalBounds b = bounds();
      Specialness s = specialness_report(
          gamma_parse("Sp"), base_parse("fin(" + std::to_string(m) + ")", b),
          base_parse("fin(" + std::to_string(n) + ")", b), b);
      CHECK(s.strict_iso);
      CHECK(s.pi0_src.free_verified);
      CHECK(s.pi0_dst.free_verified);
      CHECK(s.pi0_src.gens == m + n);
      CHECK(s.pi0_dst.gens == m + n);
      CHECK(s.pi0_src.expected_classes == binom(m + n + 3, 3));
      REQUIRE(s.pi0_gc.has_value());
      CHECK(s.pi0_additive);
      CHECK(s.pi0_gc->iso());
      CHECK(s.special_at_checked);
    }
}

TEST_CASE("the free operad construction is special on pi0") {
  EvalBounds b = bounds();
  Specialness s = specialness_report(gamma_parse("C"), base_parse("S0", b),
                                     base_parse("S0", b), b);
  CHECK(s.pi0_src.gens == 2);
  CHECK(s.pi0_dst.gens == 2);
  CHECK(s.pi0_src.classes.classes == 10);
  CHECK(s.pi0_dst.classes.classes == 16);
  REQUIRE(s.pi0_gc.has_value());
  CHECK(s.pi0_gc->iso());
  // distinct words with the same coordinate multiset collapse to one image
  CHECK_FALSE(s.strict_iso);
  CHECK(s.homology.connectivity >= 0);
  CHECK(s.special_at_checked);
}

TEST_CASE("the filtered symmetric product fails specialness") {
  EvalBounds b = bounds();
  Specialness s = specialness_report(gamma_parse("C . filt(2) . Sp"),
                                     base_parse("S0", b), base_parse("S0", b), b);
  CHECK(s.pi0_src.free_verified);
  CHECK(s.pi0_dst.free_verified);
  CHECK(s.pi0_src.gens == 5);
  CHECK(s.pi0_dst.gens == 4);
  REQUIRE(s.pi0_gc.has_value());
  CHECK(s.pi0_additive);
  CHECK(s.pi0_gc->well_defined);
  CHECK(s.pi0_gc->surjective);
  CHECK_FALSE(s.pi0_gc->injective);
  CHECK(s.pi0_gc->src_gc == AbGroup{5, {}});
  CHECK(s.pi0_gc->dst_gc == AbGroup{4, {}});
  REQUIRE(s.pi0_matrix.has_value());
  CHECK(s.pi0_matrix->rows == 4);
  CHECK(s.pi0_matrix->cols == 5);
  CHECK(smith_normal_form(*s.pi0_matrix).rank() == 4);
  CHECK_FALSE(s.strict_iso);
  CHECK_FALSE(s.special_at_checked);
}

TEST_CASE("assembly followed by lambda recovers the pair") {
  for (const char* expr : {"C", "Sp"}) {
    EvalBounds b = bounds();
    Linearization lin = linearization_lambda(gamma_parse(expr), base_parse("S0", b),
                                             base_parse("S0", b), b);
    const Space& W = lin.on_wedge->space;
    const Space& SX = lin.on_x->space;
    const Space& SY = lin.on_y->space;
    SSetMap ix = arm_inclusion(lin.on_wedge->base, 0, *lin.on_x->base.fs);
    SSetMap iy = arm_inclusion(lin.on_wedge->base, 1, *lin.on_y->base.fs);
    long long seen = 0;
    for (int d = 0; d <= b.max_dim; ++d) {
      std::vector<EWord> words;
      for (const Perm& p0 : all_perms(2))
        for (const Perm& p1 : all_perms(2)) {
          if (d == 0) words.push_back(EWord{2, {p0}});
          else words.push_back(EWord{2, {p0, p1}});
          if (d == 0) break;
        }
      for (const Value& p : enumerate_guarded(SX, d, b))
        for (const Value& q : enumerate_guarded(SY, d, b))
          for (const EWord& e : words) {
            Value a = assembly_alpha(W, {&SX, &SY}, {&ix, &iy}, e, {p, q}, d);
            CHECK(space_contains(W, a, d, /*relax_root_cap=*/true));
            if (phi(SX, p) + phi(SY, q) > b.outer_cap) continue;
            REQUIRE(space_contains(W, a, d));
            SimplexRef ar = lin.on_wedge->mat.ref_of(a, d);
            CHECK(lin.to_x.apply(ar) == lin.on_x->mat.ref_of(p, d));
            CHECK(lin.to_y.apply(ar) == lin.on_y->mat.ref_of(q, d));
            ++seen;
          }
    }
    CHECK(seen > 0);
  }
}

TEST_CASE("assembly with one arm is the identity") {
  EvalBounds b = bounds();
  EvalResult ev = eval_expr(gamma_parse("C"), base_parse("S0 v S0", b), b);
  SSetMap idm{&ev.base.fs->s, &ev.base.fs->s, {}};
  for (std::size_t g = 0; g < ev.base.fs->s.gens.size(); ++g)
    idm.gen_image.push_back(SimplexRef{{}, (int)g});
  for (int d = 0; d <= b.max_dim; ++d)
    for (const Value& p : enumerate_guarded(ev.space, d, b)) {
      EWord e = eword_identity(1, d);
      Value a = assembly_alpha(ev.space, {&ev.space}, {&idm}, e, {p}, d);
      CHECK(a == p);
    }
}

TEST_CASE("assembly commutes with the augmentation") {
  EvalBounds b = bounds();
  Linearization lin = linearization_lambda(gamma_parse("C"), base_parse("S0", b),
                                           base_parse("S0", b), b);
  const Space& W = lin.on_wedge->space;
  const Space& SX = lin.on_x->space;
  const Space& SY = lin.on_y->space;
  Space spw = eps_target(W);
  SSetMap ix = arm_inclusion(lin.on_wedge->base, 0, *lin.on_x->base.fs);
  SSetMap iy = arm_inclusion(lin.on_wedge->base, 1, *lin.on_y->base.fs);
  for (const Value& p : enumerate_guarded(SX, 0, b))
    for (const Value& q : enumerate_guarded(SY, 0, b)) {
      EWord e{2, {perm_identity(2)}};
      Value a = assembly_alpha(W, {&SX, &SY}, {&ix, &iy}, e, {p, q}, 0);
      Value lhs = canon(spw, eps_to_sp(W, a, 0));
      Value ip = canon(W, transport(SX, W, ix, p, 0));
      Value iq = canon(W, transport(SY, W, iy, q, 0));
      Value rhs = canon(spw, sp_mu_point(v_sppt({eps_to_sp(W, ip, 0),
                                                 eps_to_sp(W, iq, 0)})));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("module action laws hold for the built-in actions") {
  EvalBounds b = bounds();
  ModuleActionReport c = check_module_action(gamma_parse("C"), base_parse("S0", b), b);
  CHECK(c.pass());
  CHECK(c.points > 0);

  ModuleActionReport sp =
      check_module_action(gamma_parse("Sp"), base_parse("S0 v S0", b), b);
  CHECK(sp.pass());

  ModuleActionReport nested =
      check_module_action(gamma_parse("C . Sp"), base_parse("S0", b), b);
  CHECK(nested.pass());
}

TEST_CASE("the filtered symmetric product is not closed under the action") {
  EvalBounds b = bounds();
  ModuleActionReport r =
      check_module_action(gamma_parse("filt(2) . Sp"), base_parse("S0", b), b);
  CHECK(r.unit);
  CHECK(r.assoc);
  CHECK(r.aug_square);
  CHECK(r.filtration);
  CHECK_FALSE(r.closed);
  CHECK_FALSE(r.pass());

  CHECK_THROWS_AS(check_module_action(gamma_parse("Id"), base_parse("S0", b), b),
                  std::invalid_argument);
}

TEST_CASE("towers are functorial over pointed maps") {
  EvalBounds b = bounds();
  GammaExpr F = gamma_parse("filt(2) . Sp");

  std::vector<BaseSpace> fin(4);
  std::vector<Space> tower(4);
  std::vector<Materialized> mat(4);
  for (int n = 1; n <= 3; ++n) {
    fin[n] = base_parse("fin(" + std::to_string(n) + ")", b);
    tower[n] = apply_expr(F, space_base(fin[n].fs.get()), b);
    mat[n] = materialize(tower[n], b.max_dim);
  }

  auto induced = [&](const std::vector<int>& img, int n, int k) {
    SSetMap pm = pointed_map(img, *fin[n].fs, *fin[k].fs);
    return induced_sset_map(mat[n], mat[k], [&, pm](const Value& v, int d) {
      return transport(tower[n], tower[k], pm, v, d);
    });
  };

  // identity map induces the identity
  SSetMap id3 = induced({1, 2, 3}, 3, 3);
  for (std::size_t g = 0; g < id3.gen_image.size(); ++g)
    CHECK(id3.gen_image[g] == SimplexRef{{}, (int)g});

  // all pointed maps <n> -> <k> induce filtered simplicial maps
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= 3; ++k) {
      std::vector<int> img(n, 0);
      for (;;) {
        SSetMap f = induced(img, n, k);
        std::string why;
        CHECK(is_filtered_map(f, mat[n].fs, mat[k].fs, &why));
        int i = 0;
        while (i < n && img[i] == k) img[i++] = 0;
        if (i == n) break;
        ++img[i];
      }
    }

  // composition: the induced map of a composite is the composite
  std::vector<int> f23 = {2, 1};          // <2> -> <3>
  std::vector<int> g31 = {0, 1, 1};       // <3> -> <1>
  std::vector<int> gf21 = {1, 0};         // composite <2> -> <1>
  SSetMap fi = induced(f23, 2, 3);
  SSetMap gi = induced(g31, 3, 1);
  SSetMap gfi = induced(gf21, 2, 1);
  for (std::size_t g = 0; g < gfi.gen_image.size(); ++g)
    CHECK(gfi.gen_image[g] == gi.apply(fi.gen_image[g]));
}

TEST_CASE("the augmentation hits the basepoint only at the basepoint") {
  EvalBounds b = bounds();
  for (const char* expr : {"Sp", "C", "C . filt(2) . Sp"}) {
    BaseSpace base = base_parse("S0 v S0", b);
    Space t = apply_expr(gamma_parse(expr), space_base(base.fs.get()), b);
    Space spx = eps_target(t);
    for (int d = 0; d <= b.max_dim; ++d)
      for (const Value& v : enumerate_guarded(t, d, b)) {
        Value e = canon(spx, eps_to_sp(t, v, d));
        CHECK(is_bp(spx, e) == is_bp(t, v));
      }
  }
}

TEST_CASE("the augmentation target keeps the outermost bound only") {
  EvalBounds b = bounds();
  BaseSpace base = base_parse("S0", b);
  Space t = apply_expr(gamma_parse("C . filt(2) . Sp"), space_base(base.fs.get()), b);
  Space spx = eps_target(t);
  // a C-point of weight 3 flattens to a multiset of weight 3
  bool seen3 = false;
  for (const Value& v : enumerate_guarded(t, 0, b))
    if (phi(t, v) == 3) {
      seen3 = true;
      Value e = eps_to_sp(t, v, 0);
      CHECK(space_contains(spx, canon(spx, e), 0));
    }
  CHECK(seen3);
}
