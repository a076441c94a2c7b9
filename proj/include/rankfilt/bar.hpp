#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rankfilt/gamma.hpp"

namespace rankfilt {

// Two-sided bar construction B(C, C, F) over the free operad layer C acting
// on a tower F.  Level k is the composite C^{k+1} F over the base, shaped by
// the variant:
//
//   Unfiltered   C^{k+1} F X           every bare layer capped at outer_cap
//   Unstable     filter_m C^{k+1} F X  the filtration applied levelwise
//   Stable       C filter_m C^k F X    only the block inside the filter; the
//                outer layer is enumerated up to weight m + k + 1
//
// Faces d_0..d_k multiply adjacent layers, d_k being the module action on F;
// degeneracies s_0..s_k insert unit layers.  The stable d_0 multiplies across
// the filter: every coordinate of a filtered point already has phi <= m, so
// the image satisfies the inner filter of the target.  Its root weight can
// exceed the *enumeration* cap m + k of the target, which is a completeness
// boundary and not part of the subobject; closure checks therefore relax the
// root cap, and identity checks compare canonical values.

enum class BarVariant { Unfiltered, Unstable, Stable };

std::string to_string(BarVariant v);

struct BarMemo;  // cell cache, shared between copies

struct BarObject {
  GammaExpr F;
  BaseSpace X;
  int m = 0;
  BarVariant variant = BarVariant::Stable;
  int K = 1;
  EvalBounds bounds;

  Space fx;                   // F over the base
  bool f_c_rooted = false;    // module action: operad composition vs union
  std::vector<Space> levels;  // 0..K

  int stable_outer_cap(int k) const { return m + k + 1; }
  std::shared_ptr<BarMemo> memo;
};

// F must evaluate to a C- or Sp-rooted tower (these carry the module action)
BarObject bar_make(const GammaExpr& F, const BaseSpace& X, int m,
                   BarVariant variant, int K, const EvalBounds& b);

// canonical points of level k in dimension d; memoized, thread-safe
const std::vector<Value>& bar_cells(const BarObject& b, int k, int d);

// d_i: level k -> level k-1 (1 <= k <= K, 0 <= i <= k); input canonical in
// levels[k], output canonical in levels[k-1]
Value bar_face(const BarObject& b, int k, int i, const Value& p, int d);

// s_i: level k -> level k+1 (0 <= k < K, 0 <= i <= k)
Value bar_degeneracy(const BarObject& b, int k, int i, const Value& p, int d);

// the unit inserted at the outermost position, level k -> level k+1; the
// stable variant has no such map (the new outer layer is unfiltered)
Value bar_extra_degeneracy(const BarObject& b, int k, const Value& p, int d);

// augmentation: module action at the root, level 0 -> (filter_m) F X, with
// the unit of C as its section; not available for the stable variant
Space bar_aug_target(const BarObject& b);
Value bar_augmentation(const BarObject& b, const Value& p, int d);
Value bar_aug_section(const BarObject& b, const Value& p, int d);

// --- identity suites -------------------------------------------------------

// all five simplicial identity families on every enumerated point, plus
// containment of every image and phi monotonicity
struct BarIdentityReport {
  long long checks = 0;
  long long failures = 0;
  long long closure_violations = 0;  // image outside the target level
  long long phi_violations = 0;      // face raised phi / degeneracy moved it
  std::vector<std::string> failing;  // first few offending composites

  bool pass() const {
    return failures == 0 && closure_violations == 0 && phi_violations == 0;
  }
};

BarIdentityReport bar_check_identities(const BarObject& b,
                                       bool parallel = true);

// extra-degeneracy and augmentation laws (Unfiltered / Unstable only):
//   d_0 s = id,  d_{i+1} s = s d_i,  s_{i+1} s = s s_i,
//   aug . section = id,  aug d_0 = aug d_1
struct BarExtraReport {
  long long checks = 0;
  long long failures = 0;
  std::vector<std::string> failing;

  bool pass() const { return failures == 0; }
};

BarExtraReport bar_check_extra(const BarObject& b);

// --- pi0 of the realization -------------------------------------------------

// computed from levels 0 and 1 only
struct BarPi0 {
  // free-monoid presentation, available when level 0 is C-rooted with a
  // free pi0 certificate (Unfiltered and Stable variants)
  bool monoidal = false;
  Pi0Free cert;                 // level-0 certificate
  bool vec_consistent = false;  // bar measurement agrees with the certificate
  FPCommMonoid monoid;  // cert generators; relations d0(z) ~ d1(z) over the
                        // vertices z of level 1, duplicates removed

  // set-level coequalizer pi0(L1) => pi0(L0), any variant; for Stable the
  // level-0 root cap is raised to m+2 so both faces of every level-1 vertex
  // land inside the enumeration
  int level0_classes = 0;
  int coequalized = 0;
  std::vector<int> coeq_class;  // level-0 class -> coequalized class id
};

BarPi0 realize_pi0(const BarObject& b);

// --- unstable vs stable ------------------------------------------------------

// levelwise comparison along the identity on values: a filtered point of
// C C^k F has every coordinate of filtration <= m, so it is also a point of
// C filter_m C^k F
struct BarCompare {
  BarObject unstable, stable;
  long long points = 0;
  bool contained = true;          // every unstable cell lies in the stable level
  bool switch_simplicial = true;  // commutes with every face and degeneracy
  bool phi_preserved = true;

  BarPi0 unstable_pi0, stable_pi0;
  int filter_f_classes = 0;  // pi0 of filter_m F X
  bool unstable_matches_filter = false;  // coequalized == filter_f_classes

  bool pass() const {
    return contained && switch_simplicial && phi_preserved &&
           unstable_matches_filter;
  }
};

BarCompare compare_unstable_stable(const GammaExpr& F, const BaseSpace& X,
                                   int m, int K, const EvalBounds& b);

}  // namespace rankfilt
