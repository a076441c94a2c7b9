#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "rankfilt/word.hpp"

using namespace rankfilt;

namespace {

// oracle enumeration: a monotone surjection [n] ->> [e] is determined by the
// e positions (out of n) where the value steps up
std::vector<Mono> all_surjections(int n, int e) {
  std::vector<Mono> out;
  std::vector<int> pos;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(pos.size()) == e) {
      Mono f(n + 1, 0);
      int v = 0;
      std::size_t next = 0;
      for (int t = 1; t <= n; ++t) {
        if (next < pos.size() && pos[next] == t - 1) {
          ++v;
          ++next;
        }
        f[t] = v;
      }
      out.push_back(f);
      return;
    }
    for (int i = from; i < n; ++i) {
      pos.push_back(i);
      self(self, i + 1);
      pos.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Mono> all_monotone(int n, int m) {
  // all monotone maps [n] -> [m]
  std::vector<Mono> out;
  Mono cur;
  auto rec = [&](auto&& self, int t, int low) -> void {
    if (t > n) {
      out.push_back(cur);
      return;
    }
    for (int v = low; v <= m; ++v) {
      cur.push_back(v);
      self(self, t + 1, v);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace

TEST_CASE("degeneracy word validity") {
  CHECK(DegeneracyWord{}.valid());
  CHECK(DegeneracyWord{{3, 1, 0}}.valid());
  CHECK(!DegeneracyWord{{1, 1}}.valid());
  CHECK(!DegeneracyWord{{0, 2}}.valid());
  CHECK(!DegeneracyWord{{-1}}.valid());
}

TEST_CASE("word <-> mono roundtrip over all surjections") {
  for (int n = 0; n <= 5; ++n)
    for (int e = 0; e <= n; ++e) {
      auto surjs = all_surjections(n, e);
      // binomial count
      long long binom = 1;
      for (int i = 0; i < e; ++i) binom = binom * (n - i) / (i + 1);
      CHECK(static_cast<long long>(surjs.size()) == binom);
      for (const Mono& f : surjs) {
        DegeneracyWord w = mono_to_word(f);
        CHECK(w.valid());
        CHECK(w.size() == n - e);
        CHECK(word_to_mono(w, e) == f);
      }
    }
}

TEST_CASE("specific words") {
  // s_2 s_0 on a 1-simplex: [3] ->> [1]
  DegeneracyWord w{{2, 0}};
  Mono f = word_to_mono(w, 1);
  CHECK(f == Mono{0, 0, 1, 1});
  CHECK(mono_to_word(f) == w);

  // basepoint word at dimension 3 collapses everything
  DegeneracyWord bp{{2, 1, 0}};
  CHECK(word_to_mono(bp, 0) == Mono{0, 0, 0, 0});
}

TEST_CASE("face injections and composition") {
  Mono d1 = face_mono(1, 3);  // [2] -> [3] skipping 1
  CHECK(d1 == Mono{0, 2, 3});
  CHECK(face_mono(0, 1) == Mono{1});
  CHECK(face_mono(1, 1) == Mono{0});

  // sigma_i then delta_i is the identity
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i < n; ++i) {
      Mono sigma = word_to_mono(DegeneracyWord{{i}}, n - 1);
      Mono idm = compose_mono(sigma, face_mono(i, n));
      for (int t = 0; t < n; ++t) CHECK(idm[t] == t);
    }

  // composition is associative on random small triples
  auto fs = all_monotone(2, 3);
  auto gs = all_monotone(3, 2);
  auto hs = all_monotone(2, 2);
  for (const auto& f : fs)
    for (const auto& g : gs)
      for (const auto& h : hs)
        CHECK(compose_mono(compose_mono(f, g), h) == compose_mono(f, compose_mono(g, h)));
}

TEST_CASE("epi-mono factorization reconstructs the map") {
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m)
      for (const Mono& f : all_monotone(n, m)) {
        EpiMono em = epi_mono_factor(f, m);
        // rebuild the injection from its omitted values
        std::vector<int> image;
        for (int v = 0; v <= m; ++v) {
          bool omitted = false;
          for (int o : em.omitted) omitted |= (o == v);
          if (!omitted) image.push_back(v);
        }
        CHECK(static_cast<int>(em.surj.size()) == n + 1);
        for (int t = 0; t <= n; ++t) {
          REQUIRE(em.surj[t] < static_cast<int>(image.size()));
          CHECK(image[em.surj[t]] == f[t]);
        }
        // surjective part really is surjective
        if (!em.surj.empty()) {
          DegeneracyWord w = mono_to_word(em.surj);
          CHECK(w.valid());
        }
      }
}
