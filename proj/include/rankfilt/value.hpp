#pragma once

// Points of iterated functor applications, as structural trees.
//
//   Base  - a canonical reference into a base simplicial set
//   Tuple - a point of a product, one child per factor
//   Side  - a point of a wedge: which summand plus the point inside it
//   CPt   - a point of the free operad construction: a word over some arity
//           together with that many ordered coordinates
//   SpPt  - a point of the free commutative monoid: a multiset of coordinates,
//           kept sorted
//
// Values compare structurally, so canonical representatives can be chosen by
// ordering alone.

#include <string>
#include <vector>

#include "rankfilt/eword.hpp"
#include "rankfilt/sset.hpp"

namespace rankfilt {

enum class VK { Base, Tuple, Side, CPt, SpPt };

struct Value {
  VK kind = VK::Base;
  SimplexRef ref;            // Base
  int side = 0;              // Side
  EWord word;                // CPt
  std::vector<Value> kids;   // Tuple components / Side inner / CPt coords / SpPt elements

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }
  bool operator<(const Value& o) const;
};

Value v_base(SimplexRef r);
Value v_tuple(std::vector<Value> comps);
Value v_side(int side, Value inner);
Value v_cpt(EWord w, std::vector<Value> coords);
Value v_sppt(std::vector<Value> elems);  // sorted by the caller or by canon

std::string value_str(const Value& v);

}  // namespace rankfilt
