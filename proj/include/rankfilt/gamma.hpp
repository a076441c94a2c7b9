#pragma once

// Functor expressions over finite pointed filtered bases: parsing, bounded
// evaluation to towers, functoriality along pointed maps, linearization,
// assembly, and specialness / pi0-freeness certificates.

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankfilt/filtered.hpp"
#include "rankfilt/monoid.hpp"
#include "rankfilt/space.hpp"

namespace rankfilt {

// a configured resource bound was hit; callers report it, never work around
struct BoundExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvalBounds {
  int max_dim = 1;      // simplicial levels 0..max_dim are materialized
  int max_filt = 2;     // largest admissible filtration level
  int outer_cap = 3;    // weight cap on C / Sp layers not under a filter
  long long simplex_cap = 5'000'000;  // per-level enumeration guard
};

// --- expressions --------------------------------------------------------

// atoms Id | Sp | Sp(m) | C | filt(m), composed right-associatively with `.`
struct FunctorAtom {
  enum Kind { Id, SpInf, SpM, C, FilterM };
  Kind kind = Id;
  int m = -1;  // SpM, FilterM

  bool operator==(const FunctorAtom&) const = default;
};

struct GammaExpr {
  std::vector<FunctorAtom> atoms;  // outermost first
  std::string str() const;
};

GammaExpr gamma_parse(const std::string& text);

// base spaces: S0 | S1 | S2 | point | fin(k) | Sp(m, A) | A v B | ( A )
struct BaseSpace {
  std::shared_ptr<const FilteredSSet> fs;
  // populated when the outermost constructor is a wedge
  std::shared_ptr<const FilteredSSet> left, right;
  std::shared_ptr<const WedgeIndex> widx;

  bool is_wedge() const { return widx != nullptr; }
};

BaseSpace base_parse(const std::string& text, const EvalBounds& b);
BaseSpace base_of(std::shared_ptr<const FilteredSSet> fs);
BaseSpace base_wedge(std::shared_ptr<const FilteredSSet> a,
                     std::shared_ptr<const FilteredSSet> b);

// tower over the base, tightened; bare C / Sp layers get outer_cap
Space apply_expr(const GammaExpr& e, const Space& base, const EvalBounds& b);

// enumerate one level, guarded by simplex_cap and max_dim
std::vector<Value> enumerate_guarded(const Space& s, int d, const EvalBounds& b);

struct EvalResult {
  BaseSpace base;
  Space space;
  Materialized mat;  // levels 0..bounds.max_dim
};

EvalResult eval_expr(const GammaExpr& e, const BaseSpace& base,
                     const EvalBounds& b, bool parallel = true);

// --- maps of towers ------------------------------------------------------

// simplicial map between materializations from a point-level function; the
// function may return raw values, images are recanonicalized in the target
SSetMap induced_sset_map(const Materialized& src, const Materialized& dst,
                         const std::function<Value(const Value&, int)>& fn);

// transport along a pointed map of bases; src and dst towers must have the
// same functor shape over f.src and f.dst
Value transport(const Space& src, const Space& dst, const SSetMap& f,
                const Value& v, int d);

// augmentation to the symmetric-product shadow: forget every operad word and
// flatten nested multiset layers; defined for composition towers (no
// products or wedges above the base)
Value eps_to_sp(const Space& s, const Value& v, int d);
Space eps_target(const Space& s);

// --- pi0 as a monoid ------------------------------------------------------

// free pi0 certificate for towers rooted in C, Sp, or products of such:
// generators are the non-basepoint components of each root's inner space and
// every component is measured by its generator multiset
struct Pi0Free {
  bool applicable = false;
  int gens = 0;
  Pi0 classes;                          // of the materialization
  std::vector<std::vector<int>> vec_of_class;  // class -> generator vector
  long long expected_classes = 0;       // budget multisets at the caps
  bool edges_consistent = false;        // vec equal across every edge
  bool free_verified = false;           // distinct vecs and full budget

  FPCommMonoid monoid() const;  // free on `gens`
};

Pi0Free pi0_free(const EvalResult& ev);

// matrix of the pi0 monoid map induced by f between two free-certified
// towers (dst.gens x src.gens); every vertex must map additively
struct Pi0HomResult {
  IntMat matrix;
  bool additive = false;  // image vec of every vertex equals matrix * vec
  MonoidHom hom() const;
  const Pi0Free* src = nullptr;
  const Pi0Free* dst = nullptr;
};

Pi0HomResult pi0_hom(const EvalResult& src_ev, const Pi0Free& src,
                     const SSetMap& f, const EvalResult& dst_ev,
                     const Pi0Free& dst);

// --- linearization --------------------------------------------------------

struct Linearization {
  std::shared_ptr<EvalResult> on_wedge, on_x, on_y;
  std::shared_ptr<FilteredSSet> product;        // F(X) x F(Y), sum filtration
  std::shared_ptr<ProductIndex> pix;
  std::shared_ptr<FilteredSSet> staged_product;  // filter_cap of the product
  std::vector<int> stage_gen_map;                // product gen -> staged gen
  SSetMap to_x, to_y;     // the two collapse components
  SSetMap assembled;      // F(X v Y) -> filter_cap(F(X) x F(Y))
};

Linearization linearization_lambda(const GammaExpr& e, const BaseSpace& x,
                                   const BaseSpace& y, const EvalBounds& b,
                                   bool parallel = true);

struct Specialness {
  Linearization lin;
  Pi0Free pi0_src, pi0_dst;
  std::optional<IntMat> pi0_matrix;   // induced matrix on free generators
  std::optional<GcCompare> pi0_gc;    // when both sides are free-certified
  bool pi0_additive = false;
  bool strict_iso = false;            // lambda an isomorphism onto the stage
  ConnectivityReport homology;        // cone of the staged lambda
  bool special_at_checked = false;    // no failure in the examined range
};

Specialness specialness_report(const GammaExpr& e, const BaseSpace& x,
                               const BaseSpace& y, const EvalBounds& b,
                               bool parallel = true);

// --- assembly -------------------------------------------------------------

// include k points along the wedge arms and act by an arity-k operad word:
// C-rooted towers multiply, Sp-rooted towers take unions; the result is the
// canonical value in the tower over the wedge (membership checked with the
// root cap relaxed by the caller when weights add beyond it)
Value assembly_alpha(const Space& on_wedge, const std::vector<const Space*>& arms,
                     const std::vector<const SSetMap*>& incs, const EWord& e,
                     const std::vector<Value>& points, int d);

// --- module action --------------------------------------------------------

struct ModuleActionReport {
  bool unit = false;        // action after eta is the identity
  bool assoc = false;       // action after mu equals action after C(action)
  bool aug_square = false;  // eps of action equals Sp-multiplication of eps
  bool filtration = false;  // action never raises phi
  bool closed = false;      // action lands inside the tower (caps, filters)
  long long points = 0;

  bool pass() const {
    return unit && assoc && aug_square && filtration && closed;
  }
};

// F must evaluate to a C- or Sp-rooted tower (the two built-in actions)
ModuleActionReport check_module_action(const GammaExpr& f,
                                       const BaseSpace& base,
                                       const EvalBounds& b);

// --- pointed finite sets ---------------------------------------------------

// pointed map <n> -> <k> given by images of 1..n in 0..k; builds the
// simplicial map between the discrete models
SSetMap pointed_map(const std::vector<int>& img, const FilteredSSet& src,
                    const FilteredSSet& dst);

}  // namespace rankfilt
