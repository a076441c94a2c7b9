#pragma once

// Towers of functors applied to finite filtered base spaces, with exact
// point enumeration at each simplicial level.
//
//   Base   - a filtered simplicial set (not owned)
//   Prod   - finite product, sum filtration
//   Wedge  - two-summand wedge
//   C      - free operad construction, points (word; x_1..x_n) up to
//            relabelling; enumerated through identity-led words, so each
//            orbit appears exactly once
//   Sp     - free commutative monoid (infinite symmetric product), points are
//            sorted multisets
//   Filter - the subspace of points with phi <= m
//
// C and Sp nodes carry a weight cap: only points of total filtration <= cap
// exist in the enumeration.  Every non-basepoint coordinate has phi >= 1, so
// the cap also bounds the arity.  Membership tests can relax the cap at the
// root to ask about the ambient uncapped space.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rankfilt/filtered.hpp"
#include "rankfilt/value.hpp"

namespace rankfilt {

enum class SK { Base, Prod, Wedge, C, Sp, Filter };

struct Space {
  SK kind = SK::Base;
  const FilteredSSet* base = nullptr;  // Base
  std::vector<Space> kids;             // Prod factors / Wedge(2) / C, Sp, Filter inner
  int cap = -1;                        // C, Sp: weight cap, must be >= 0
  int m = -1;                          // Filter: level
};

Space space_base(const FilteredSSet* fs);
Space space_prod(std::vector<Space> factors);
Space space_wedge(Space a, Space b);
Space space_c(Space inner, int cap);
Space space_sp(Space inner, int cap);
Space space_filter(Space inner, int m);
std::string space_str(const Space& s);

// lower every cap beneath a filter: a point of total weight <= m has every
// nested coordinate of weight <= m
Space tighten(Space s);

// structural sanity of the value in the space (dimension d); caps respected
bool space_contains(const Space& s, const Value& v, int d, bool relax_root_cap = false);

bool is_bp(const Space& s, const Value& v);
Value bp_at(const Space& s, int d);
int phi(const Space& s, const Value& v);

// canonical representative: basepoint coordinates dropped, words identity
// led, multisets sorted, wedge basepoint on the left summand
Value canon(const Space& s, const Value& v);

// simplicial operators; results are canonical
Value face(const Space& s, const Value& v, int i);
Value degen(const Space& s, const Value& v, int i);

// every canonical point at level d (degenerate ones included)
std::vector<Value> enumerate_level(const Space& s, int d);

// --- depth-targeted structure maps ------------------------------------
//
// Depth counts C nodes from the root; Filter, Wedge and Side are transparent,
// Prod and Sp apply the action to every child.  fn receives the subspace
// rooted at the target together with the subvalue and its level.

using DepthFn = std::function<Value(const Space&, const Value&, int)>;
Value at_depth(const Space& s, const Value& v, int d, int depth, const DepthFn& fn);

// The depth maps return raw values; the caller canonicalizes in the target
// space, which generally differs from the source tower.

// multiply two adjacent C layers at the given depth (operadic composition)
Value mu_at(const Space& s, const Value& v, int d, int depth);
// collapse C over Sp at the given depth (union of multisets)
Value mu_sp_at(const Space& s, const Value& v, int d, int depth);
// insert a unary C layer at the given depth
Value eta_at(const Space& s, const Value& v, int d, int depth);
// forget the word of the C layer at the given depth into a multiset
Value eps_at(const Space& s, const Value& v, int d, int depth);

// raw building blocks used by the depth maps
Value mu_point(const Value& v);     // CPt of CPts -> CPt
Value mu_sp_point(const Value& v);  // CPt of SpPts -> SpPt (module action)
Value sp_mu_point(const Value& v);  // SpPt of SpPts -> SpPt (monoid multiplication)
Value eta_point(const Value& v, int d);
Value eps_point(const Value& v);

// --- materialization ---------------------------------------------------

struct Materialized {
  Space space;
  FilteredSSet fs;
  std::vector<Value> gen_value;               // per generator
  std::vector<std::map<Value, int>> gen_of;   // per dimension
  // canonical reference of an arbitrary level-d value
  SimplexRef ref_of(const Value& v, int d) const;
  // value of an arbitrary reference (degeneracies applied)
  Value value_of(const SimplexRef& r) const;
};

// level_cap >= 0 bounds the enumeration size per level (std::length_error)
Materialized materialize(const Space& s, int max_dim, bool parallel = true,
                         long long level_cap = -1);

}  // namespace rankfilt
