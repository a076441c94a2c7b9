#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <vector>

#include "rankfilt/intmat.hpp"
#include "rankfilt/smith.hpp"

using namespace rankfilt;

namespace {

std::int64_t det(const IntMat& m) {
  REQUIRE(m.rows == m.cols);
  if (m.rows == 0) return 1;
  if (m.rows == 1) return m.at(0, 0);
  std::int64_t d = 0;
  for (int i = 0; i < m.rows; ++i) {
    if (m.at(i, 0) == 0) continue;
    IntMat sub(m.rows - 1, m.cols - 1);
    for (int r = 0, rr = 0; r < m.rows; ++r) {
      if (r == i) continue;
      for (int c = 1; c < m.cols; ++c) sub.at(rr, c - 1) = m.at(r, c);
      ++rr;
    }
    std::int64_t term = checked_mul(m.at(i, 0), det(sub));
    d = (i % 2) ? checked_sub(d, term) : checked_add(d, term);
  }
  return d;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void subsets(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

// independent oracle: d_k = gcd of all k x k minors, invariant factor
// s_k = d_k / d_{k-1}
std::vector<std::int64_t> divisors_by_minors(const IntMat& m) {
  std::vector<std::int64_t> dk = {1};
  for (int k = 1; k <= std::min(m.rows, m.cols); ++k) {
    std::vector<std::vector<int>> rs, cs;
    subsets(m.rows, k, rs);
    subsets(m.cols, k, cs);
    std::int64_t g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMat sub(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(r[i], c[j]);
        g = gcd64(g, det(sub));
      }
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<std::int64_t> out;
  for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
  return out;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  REQUIRE(a.cols == b.rows);
  IntMat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) = checked_add(c.at(i, j), checked_mul(a.at(i, k), b.at(k, j)));
    }
  return c;
}

}  // namespace

TEST_CASE("checked arithmetic is loud") {
  CHECK(checked_add(2, 3) == 5);
  CHECK_THROWS_AS(checked_mul(INT64_MAX, 2), OverflowError);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), OverflowError);
  CHECK_THROWS_AS(checked_sub(INT64_MIN, 1), OverflowError);
}

TEST_CASE("smith normal form on fixed matrices") {
  SUBCASE("diagonal already") {
    IntMat m = IntMat::from_rows({{2, 0}, {0, 4}});
    auto s = smith_normal_form(m);
    CHECK(s.divisors == std::vector<std::int64_t>{2, 4});
  }
  SUBCASE("diagonal needing the divisibility fix") {
    IntMat m = IntMat::from_rows({{4, 0}, {0, 6}});
    auto s = smith_normal_form(m);
    CHECK(s.divisors == std::vector<std::int64_t>{2, 12});
  }
  SUBCASE("rank deficient") {
    IntMat m = IntMat::from_rows({{1, 2, 3}, {2, 4, 6}});
    auto s = smith_normal_form(m);
    CHECK(s.divisors == std::vector<std::int64_t>{1});
  }
  SUBCASE("zero and empty") {
    CHECK(smith_normal_form(IntMat(3, 2)).divisors.empty());
    CHECK(smith_normal_form(IntMat(0, 4)).divisors.empty());
    CHECK(smith_normal_form(IntMat(0, 0)).divisors.empty());
  }
}

TEST_CASE("smith divisors match the determinantal divisor oracle") {
  std::mt19937 rng(20260814);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 120; ++trial) {
    IntMat m(size(rng), size(rng));
    for (auto& x : m.a) x = entry(rng);
    auto oracle = divisors_by_minors(m);
    auto par = smith_normal_form(m, true);
    auto ser = smith_normal_form_serial(m);
    CHECK(par.divisors == oracle);
    CHECK(ser.divisors == oracle);
  }
}

TEST_CASE("smith divisors are invariant under row and column shuffles") {
  std::mt19937 rng(7);
  IntMat m = IntMat::from_rows({{6, 4, 2, 0}, {0, 3, 9, 3}, {2, 2, 2, 2}});
  auto base = smith_normal_form(m).divisors;
  for (int trial = 0; trial < 30; ++trial) {
    IntMat p = m;
    for (int t = 0; t < 5; ++t) {
      p.swap_rows(static_cast<int>(rng() % p.rows), static_cast<int>(rng() % p.rows));
      p.swap_cols(static_cast<int>(rng() % p.cols), static_cast<int>(rng() % p.cols));
    }
    CHECK(smith_normal_form(p).divisors == base);
  }
}

TEST_CASE("smith_full factorization U m V = D with unimodular U, V") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> entry(-5, 5);
  std::uniform_int_distribution<int> size(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    IntMat m(size(rng), size(rng));
    for (auto& x : m.a) x = entry(rng);
    SmithFull f = smith_full(m);
    IntMat lhs = mat_mul(mat_mul(f.u, m), f.v);
    CHECK(lhs == f.d);
    std::int64_t du = det(f.u), dv = det(f.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    CHECK(f.divisors == smith_normal_form(m).divisors);
    for (int i = 0; i < f.d.rows; ++i)
      for (int j = 0; j < f.d.cols; ++j)
        if (i != j) CHECK(f.d.at(i, j) == 0);
  }
}

TEST_CASE("integer linear solving") {
  IntMat a = IntMat::from_rows({{2, 0}, {0, 3}});
  SUBCASE("solvable") {
    auto x = solve_integer(a, {4, 9});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
  }
  SUBCASE("unsolvable over Z") { CHECK(!solve_integer(a, {3, 3}).has_value()); }
  SUBCASE("dependent rows") {
    IntMat b = IntMat::from_rows({{1, 2}, {2, 4}});
    auto x = solve_integer(b, {3, 6});
    REQUIRE(x.has_value());
    CHECK((*x)[0] + 2 * (*x)[1] == 3);
    CHECK(!solve_integer(b, {3, 5}).has_value());
  }
}

TEST_CASE("integer kernel") {
  IntMat a = IntMat::from_rows({{1, 1, 1}});
  IntMat k = integer_kernel(a);
  CHECK(k.rows == 3);
  CHECK(k.cols == 2);
  IntMat prod = mat_mul(a, k);
  for (auto v : prod.a) CHECK(v == 0);
  CHECK(smith_normal_form(k).rank() == 2);

  IntMat inj = IntMat::from_rows({{1, 0}, {0, 2}, {3, 3}});
  CHECK(integer_kernel(inj).cols == 0);
}

TEST_CASE("column span membership") {
  IntMat a = IntMat::from_rows({{2, 0}, {0, 3}});
  CHECK(in_column_span(a, {2, 3}));
  CHECK(in_column_span(a, {0, 0}));
  CHECK(!in_column_span(a, {1, 0}));
}

TEST_CASE("cokernel and group printing") {
  CHECK(cokernel(IntMat::from_rows({{2, 0}, {0, 3}})) == AbGroup{0, {6}});
  CHECK(cokernel(IntMat::from_rows({{2, 0}, {0, 2}})) == AbGroup{0, {2, 2}});
  CHECK(cokernel(IntMat::from_rows({{1, 0}, {0, 2}, {0, 0}})) == AbGroup{1, {2}});
  CHECK(cokernel(IntMat(2, 0)) == AbGroup{2, {}});

  CHECK(AbGroup{0, {}}.str() == "0");
  CHECK(AbGroup{1, {}}.str() == "Z");
  CHECK(AbGroup{2, {2, 4}}.str() == "Z^2 + Z/2 + Z/4");
}

TEST_CASE("homology of a two step complex") {
  // circle: one 0-cell, one 1-cell, both boundary maps zero
  IntMat d1(1, 1);
  IntMat d2(1, 0);
  CHECK(homology_at(1, d1, d2) == AbGroup{1, {}});

  // Z --2--> Z gives Z/2 at the target
  IntMat two = IntMat::from_rows({{2}});
  CHECK(homology_at(1, IntMat(0, 1), two) == AbGroup{0, {2}});
}
