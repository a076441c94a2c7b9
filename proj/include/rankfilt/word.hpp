#pragma once

// Degeneracy words and the calculus of monotone maps between finite ordinals.
//
// A simplex is stored as s_{i1} s_{i2} ... s_{ip} (g) with i1 > i2 > ... > ip
// and g nondegenerate; the word corresponds to a monotone surjection
// [dim g + p] ->> [dim g].  Rewriting a face or degeneracy past a word is
// composition of monotone maps followed by the unique epi-mono factorization.

#include <cstdint>
#include <vector>

namespace rankfilt {

struct DegeneracyWord {
  std::vector<int> idx;  // strictly decreasing

  int size() const { return static_cast<int>(idx.size()); }
  bool empty() const { return idx.empty(); }
  bool valid() const {
    for (std::size_t t = 0; t < idx.size(); ++t) {
      if (idx[t] < 0) return false;
      if (t + 1 < idx.size() && idx[t] <= idx[t + 1]) return false;
    }
    return true;
  }
  auto operator<=>(const DegeneracyWord&) const = default;
};

// monotone map [a] -> [b] stored by values; m[t] nondecreasing
using Mono = std::vector<int>;

// the surjection underlying a word applied to a gen_dim-simplex:
// [gen_dim + |w|] ->> [gen_dim]
Mono word_to_mono(const DegeneracyWord& w, int gen_dim);

// word of a monotone surjection (asserts surjectivity)
DegeneracyWord mono_to_word(const Mono& f);

// delta_i: [n-1] -> [n], the injection skipping i
Mono face_mono(int i, int n);

// outer o inner
Mono compose_mono(const Mono& outer, const Mono& inner);

// f = inj o surj; returns the values omitted by the injection (sorted
// ascending) and the surjective part
struct EpiMono {
  std::vector<int> omitted;
  Mono surj;
};
EpiMono epi_mono_factor(const Mono& f, int target_dim);

}  // namespace rankfilt
