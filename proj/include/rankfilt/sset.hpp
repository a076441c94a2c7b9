#pragma once

// Finite pointed simplicial sets, truncated at an explicit dimension.
//
// Simplices are canonical references (degeneracy word, nondegenerate
// generator).  Operations refuse dimensions beyond the truncation instead of
// silently clipping.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankfilt/smith.hpp"
#include "rankfilt/word.hpp"

namespace rankfilt {

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimplexRef {
  DegeneracyWord word;
  int gen = 0;
  auto operator<=>(const SimplexRef&) const = default;
};

struct SSet {
  struct Gen {
    int dim = 0;
    std::vector<SimplexRef> faces;  // dim+1 entries for dim >= 1
    std::string name;
  };

  std::vector<Gen> gens;
  std::vector<std::vector<int>> by_dim;
  int basepoint = 0;
  int truncation_dim = 0;

  int add_gen(int dim, std::string name);
  void set_faces(int gen, std::vector<SimplexRef> faces);

  int dim_of(const SimplexRef& r) const { return gens[r.gen].dim + r.word.size(); }
  bool is_bp(const SimplexRef& r) const { return r.gen == basepoint; }
  SimplexRef bp_at(int d) const;

  SimplexRef face(const SimplexRef& r, int i) const;
  SimplexRef degeneracy(const SimplexRef& r, int i) const;

  // all level-d simplices (degenerate ones included), deterministic order
  std::vector<SimplexRef> simplices(int d) const;
  int gen_count(int d) const;

  void check_dim(int d, const char* what) const;
  void validate() const;  // face tables well formed + d_i d_j identities
};

// built-in models
SSet sset_point(int truncation);
SSet sset_s0(int truncation);
SSet sset_s1(int truncation);  // Delta^1 / boundary
SSet sset_s2(int truncation);  // Delta^2 / boundary
SSet sset_model(const std::string& name, int truncation);
SSet sset_finite(int m, int truncation);       // <m>: basepoint + m isolated vertices
SSet esigma_nerve(int n, int truncation);      // nerve of the translation groupoid on n letters

struct SSetMap {
  const SSet* src = nullptr;
  const SSet* dst = nullptr;
  std::vector<SimplexRef> gen_image;

  SimplexRef apply(const SimplexRef& r) const;
};

bool is_simplicial(const SSetMap& f, std::string* why = nullptr);
bool is_isomorphism(const SSetMap& f);

// n-fold product with Eilenberg-Zilber generators (tuples of refs whose
// degeneracy index sets have empty common intersection)
struct ProductIndex {
  std::vector<const SSet*> factors;
  std::vector<std::vector<SimplexRef>> gen_parts;            // per product generator
  std::map<std::vector<SimplexRef>, int> gen_of_parts;
  // joint normal form of a tuple of refs at common dimension
  SimplexRef ref_of_tuple(std::vector<SimplexRef> parts) const;
};
SSet product_n(const std::vector<const SSet*>& factors, ProductIndex* index = nullptr);

struct WedgeIndex {
  // generator id in the wedge for (side, generator in that factor)
  std::vector<std::vector<int>> into;   // into[side][gen] -> wedge gen
  std::vector<std::pair<int, int>> from;  // wedge gen -> (side, gen)
};
SSet wedge(const SSet& a, const SSet& b, WedgeIndex* index = nullptr);

// quotient by the group generated by simplicial automorphisms, each given as a
// permutation of generators; throws when a generator map is not a simplicial
// automorphism
SSet quotient_by_action(const SSet& s, const std::vector<std::vector<int>>& action_gens,
                        std::vector<int>* orbit_of_gen = nullptr);

struct Pi0 {
  int classes = 0;
  int bp_class = 0;
  std::vector<int> class_of_vertex;  // indexed by dim-0 generator position in by_dim[0]
};
Pi0 pi0(const SSet& s);

// reduced integer homology in degrees 0..max_deg; needs truncation >= max_deg+1
std::vector<AbGroup> reduced_homology(const SSet& s, int max_deg, bool parallel = true);

// boundary matrix of the normalized chain complex, degree d -> d-1
IntMat boundary_matrix(const SSet& s, int d);

// same simplicial set with generators relabelled; for invariance tests
SSet permute_generators(const SSet& s, const std::vector<int>& new_id_of);

}  // namespace rankfilt
