#pragma once

// pi0 calculus: finitely presented commutative monoids, group completion,
// and homological connectivity reports for comparison maps.

#include <string>
#include <utility>
#include <vector>

#include "rankfilt/intmat.hpp"
#include "rankfilt/smith.hpp"
#include "rankfilt/sset.hpp"

namespace rankfilt {

// commutative monoid presented by generators and relations lhs = rhs, both
// sides vectors of generator multiplicities
struct FPCommMonoid {
  int gens = 0;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> relations;

  bool valid() const;
  std::string str() const;
};

// relation differences lhs - rhs as columns of a gens x #relations matrix
IntMat relation_matrix(const FPCommMonoid& m);

// universal abelian group Z^gens / (relation differences)
AbGroup group_completion(const FPCommMonoid& m);

// monoid map determined on generators; column j is the image of source
// generator j, written in the target generators (entries >= 0)
struct MonoidHom {
  FPCommMonoid src, dst;
  IntMat matrix;
};

bool hom_valid(const MonoidHom& h);

struct GcCompare {
  bool well_defined = false;  // relation images agree in gc(dst)
  bool injective = false;     // of the induced map gc(src) -> gc(dst)
  bool surjective = false;
  AbGroup src_gc, dst_gc;

  bool iso() const { return well_defined && injective && surjective; }
  std::string str() const;
};

// decides whether the induced map of group completions is an isomorphism;
// exact over Z (kernel lattice and cokernel via Smith normal form)
GcCompare gc_compare(const MonoidHom& h);

// --- connectivity ------------------------------------------------------

struct ConnectivityReport {
  // reduced homology of the mapping cone, degrees 0..max_deg
  std::vector<AbGroup> cone;
  // per degree: "iso", "epi", "fails"; degree d is an iso verdict only when
  // the cone also vanishes in degree d+1, so the top degree can be "epi" at
  // best
  std::vector<std::string> verdict;
  // largest k with H_i(cone) = 0 for all i <= k: the map is a reduced
  // homology iso below k and onto at k; -1 if it fails at 0
  int connectivity = -1;

  std::string str() const;
};

// chain map of f on normalized chains in degree d (dst basis x src basis)
IntMat chain_map_matrix(const SSetMap& f, int d);

// compares homology of source and target through the mapping cone of f;
// both ends must be truncated at >= max_deg + 1
ConnectivityReport connectivity_compare(const SSetMap& f, int max_deg,
                                        bool parallel = true);

}  // namespace rankfilt
