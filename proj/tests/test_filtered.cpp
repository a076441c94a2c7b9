#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rankfilt/filtered.hpp"

using namespace rankfilt;

TEST_CASE("filtered models validate") {
  for (const char* name : {"point", "S0", "S1", "S2"}) filtered_model(name, 3).validate();
  FilteredSSet fin = filtered_fin(3, 2);
  fin.validate();
  CHECK(fin.phi == std::vector<int>{0, 1, 1, 1});

  // a filtration that grows along a face is rejected
  FilteredSSet bad = filtered_model("S1", 2);
  bad.phi[0] = 1;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("product carries the sum filtration") {
  FilteredSSet c = filtered_model("S1", 3);
  ProductIndex ix;
  FilteredSSet torus = product_filtered(c, c, &ix);
  torus.validate();
  for (std::size_t g = 0; g < ix.gen_parts.size(); ++g)
    CHECK(torus.phi[g] ==
          c.phi[ix.gen_parts[g][0].gen] + c.phi[ix.gen_parts[g][1].gen]);
  // one generator of weight 2 in dimension 1: the diagonal-free pair (e, e)
  int weight2_dim1 = 0;
  for (int g : torus.s.by_dim[1])
    if (torus.phi[g] == 2) ++weight2_dim1;
  CHECK(weight2_dim1 == 1);
}

TEST_CASE("stage 1 of a square is the wedge") {
  FilteredSSet c = filtered_model("S1", 3);
  ProductIndex ix;
  FilteredSSet torus = product_filtered(c, c, &ix);
  std::vector<int> gen_map;
  FilteredSSet stage = filtration_stage(torus, 1, &gen_map);
  stage.validate();

  FilteredSSet w = wedge_filtered(c, c);
  w.validate();
  CHECK(stage.s.gen_count(0) == w.s.gen_count(0));
  CHECK(stage.s.gen_count(1) == w.s.gen_count(1));
  CHECK(stage.s.gen_count(2) == w.s.gen_count(2));
  CHECK(reduced_homology(stage.s, 1) == reduced_homology(w.s, 1));

  // explicit isomorphism: basepoint and the two weight-1 edges
  SimplexRef e{{}, 1};
  SimplexRef s0bp = c.s.degeneracy(c.s.bp_at(0), 0);
  int left = gen_map[ix.gen_of_parts.at({e, s0bp})];
  int right = gen_map[ix.gen_of_parts.at({s0bp, e})];
  REQUIRE(left >= 0);
  REQUIRE(right >= 0);
  SSetMap iso{&w.s, &stage.s, {SimplexRef{{}, stage.s.basepoint}, SimplexRef{{}, left},
                               SimplexRef{{}, right}}};
  CHECK(is_isomorphism(iso));
  CHECK(is_filtered_map(iso, w, stage));
}

TEST_CASE("stages are nested and compose") {
  FilteredSSet c = filtered_model("S1", 3);
  FilteredSSet sq = product_filtered(c, c);
  FilteredSSet s1 = filtration_stage(sq, 1);
  FilteredSSet s21 = filtration_stage(filtration_stage(sq, 2), 1);
  CHECK(s1.s.gens.size() == s21.s.gens.size());
  CHECK(s1.phi == s21.phi);

  // stage 0 is the point
  FilteredSSet s0 = filtration_stage(sq, 0);
  CHECK(s0.s.gens.size() == 1);

  // the full stage is everything
  CHECK(filtration_stage(sq, 2).s.gens.size() == sq.s.gens.size());
}

TEST_CASE("inclusion of a stage is a filtered map") {
  FilteredSSet c = filtered_model("S1", 2);
  FilteredSSet sq = product_filtered(c, c);
  std::vector<int> gen_map;
  FilteredSSet stage = filtration_stage(sq, 1, &gen_map);

  SSetMap inc{&stage.s, &sq.s, {}};
  inc.gen_image.resize(stage.s.gens.size());
  for (std::size_t g = 0; g < gen_map.size(); ++g)
    if (gen_map[g] >= 0) inc.gen_image[gen_map[g]] = SimplexRef{{}, static_cast<int>(g)};
  CHECK(is_filtered_map(inc, stage, sq));

  // the identity into a coarser filtration of the same set raises phi
  FilteredSSet lo = filtered_fin(1, 2);
  FilteredSSet hi = trivially_filtered(sset_finite(1, 2), 2);
  SSetMap up{&lo.s, &hi.s, {SimplexRef{{}, 0}, SimplexRef{{}, 1}}};
  SSetMap down{&hi.s, &lo.s, {SimplexRef{{}, 0}, SimplexRef{{}, 1}}};
  std::string why;
  CHECK(is_filtered_map(down, hi, lo));
  CHECK(!is_filtered_map(up, lo, hi, &why));
  CHECK(!why.empty());
}
