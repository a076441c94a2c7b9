#pragma once

// Permutations and simplices over the symmetric group operad.
//
// A d-simplex over arity n is a (d+1)-tuple of permutations of n letters;
// faces delete an entry, degeneracies repeat one.  The right translation
// action w -> w o rho (entrywise) is free, so every orbit has exactly one
// representative whose first entry is the identity.  Operadic composition is
// entrywise: gamma(s; t_1..t_k) = s<n_1..n_k> o (t_1 + ... + t_k).

#include <cstdint>
#include <string>
#include <vector>

namespace rankfilt {

using Perm = std::vector<std::uint8_t>;  // one-line form, i -> p[i]

Perm perm_identity(int n);
bool perm_is_identity(const Perm& p);
Perm perm_compose(const Perm& a, const Perm& b);  // i -> a[b[i]]
Perm perm_inverse(const Perm& p);
std::vector<Perm> all_perms(int n);

// the permutation induced on kept positions (sorted ascending), with both
// positions and values relabelled order-preservingly
Perm perm_restrict(const Perm& p, const std::vector<int>& keep);

// blocks permuted as p permutes letters; sizes[j] = width of block j
Perm block_perm(const Perm& p, const std::vector<int>& sizes);

struct EWord {
  int arity = 0;
  std::vector<Perm> entries;  // dim+1 of them

  int dim() const { return static_cast<int>(entries.size()) - 1; }
  bool id_led() const { return !entries.empty() && perm_is_identity(entries[0]); }
  bool valid() const;
  auto operator<=>(const EWord&) const = default;
  std::string str() const;
};

EWord eword_identity(int arity, int dim);
EWord eword_face(const EWord& w, int i);
EWord eword_degeneracy(const EWord& w, int i);
EWord eword_restrict(const EWord& w, const std::vector<int>& keep);
EWord eword_translate(const EWord& w, const Perm& rho);  // entrywise o rho
// inner words all share w's dimension and appear in block order
EWord operad_compose(const EWord& w, const std::vector<EWord>& inner);

}  // namespace rankfilt
