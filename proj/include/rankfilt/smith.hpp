#pragma once

// Smith normal form over Z and finitely generated abelian groups.
//
// smith_normal_form runs the row/column elimination with an OpenMP-parallel
// update kernel; smith_normal_form_serial is the plain reference kept for
// testing.  Both produce the same divisor chain for the same input.

#include <string>
#include <vector>

#include "rankfilt/intmat.hpp"

namespace rankfilt {

struct SmithResult {
  // nonzero diagonal entries d1 | d2 | ... | dr, all positive
  std::vector<std::int64_t> divisors;
  int rank() const { return static_cast<int>(divisors.size()); }
};

SmithResult smith_normal_form(IntMat m, bool parallel = true);
SmithResult smith_normal_form_serial(IntMat m);

// full form: U * input * V = D with U, V unimodular
struct SmithFull {
  IntMat d;  // diagonal form, same shape as input
  IntMat u;  // rows x rows
  IntMat v;  // cols x cols
  std::vector<std::int64_t> divisors;
};
SmithFull smith_full(IntMat m);

// finitely generated abelian group: Z^rank + sum_i Z/torsion[i], with
// torsion[i] > 1 forming a divisor chain
struct AbGroup {
  int rank = 0;
  std::vector<std::int64_t> torsion;

  bool operator==(const AbGroup&) const = default;
  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  std::string str() const;  // "0", "Z", "Z^2 + Z/2 + Z/4", ...
};

// cokernel of the column span: Z^rows / im(m)
AbGroup cokernel(const IntMat& m);

// homology of a two-step complex  C_prev <-- d_here -- C_here <-- d_next -- C_next
// at C_here: ker(d_here) / im(d_next); n_here = dim C_here.
AbGroup homology_at(int n_here, const IntMat& d_here, const IntMat& d_next);

}  // namespace rankfilt
