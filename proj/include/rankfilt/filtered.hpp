#pragma once

// Filtered pointed simplicial sets.  The filtration level lives on
// nondegenerate generators and extends to all simplices through their
// canonical references: phi(s_W x) = phi(x).
//
// Axioms enforced by validate(): phi(g) = 0 exactly for the basepoint, and
// phi(d_i x) <= phi(x).  Products carry the sum filtration, wedges inherit.

#include <string>
#include <vector>

#include "rankfilt/sset.hpp"

namespace rankfilt {

struct FilteredSSet {
  SSet s;
  std::vector<int> phi;  // per generator

  int phi_of(const SimplexRef& r) const { return phi[r.gen]; }
  void validate() const;
};

// every non-basepoint generator at the given level
FilteredSSet trivially_filtered(SSet s, int level = 1);

// "point", "S0", "S1", "S2" at level 1
FilteredSSet filtered_model(const std::string& name, int truncation);

// basepoint plus m isolated vertices at level 1
FilteredSSet filtered_fin(int m, int truncation);

// the subcomplex of simplices with phi <= m; gen_map sends old generator ids
// to new ones (-1 for dropped)
FilteredSSet filtration_stage(const FilteredSSet& x, int m,
                              std::vector<int>* gen_map = nullptr);

FilteredSSet wedge_filtered(const FilteredSSet& a, const FilteredSSet& b,
                            WedgeIndex* index = nullptr);

// sum filtration on Eilenberg-Zilber generators
FilteredSSet product_filtered(const FilteredSSet& a, const FilteredSSet& b,
                              ProductIndex* index = nullptr);

// simplicial and nonincreasing on filtration
bool is_filtered_map(const SSetMap& f, const FilteredSSet& src, const FilteredSSet& dst,
                     std::string* why = nullptr);

}  // namespace rankfilt
