#include "rankfilt/eword.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rankfilt {

Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  return p;
}

bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<std::uint8_t>(i);
  return q;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = perm_identity(n);
  do
    out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Perm perm_restrict(const Perm& p, const std::vector<int>& keep) {
  std::vector<int> image;
  image.reserve(keep.size());
  for (int k : keep) image.push_back(p[k]);
  std::vector<int> sorted = image;
  std::sort(sorted.begin(), sorted.end());
  Perm q(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    q[i] = static_cast<std::uint8_t>(
        std::lower_bound(sorted.begin(), sorted.end(), image[i]) - sorted.begin());
  return q;
}

Perm block_perm(const Perm& p, const std::vector<int>& sizes) {
  int k = static_cast<int>(sizes.size());
  std::vector<int> new_offset(k, 0);
  for (int j = 0; j < k; ++j)
    for (int j2 = 0; j2 < k; ++j2)
      if (p[j2] < p[j]) new_offset[j] += sizes[j2];
  int n = 0;
  for (int s : sizes) n += s;
  Perm out(n);
  int off = 0;
  for (int j = 0; j < k; ++j) {
    for (int t = 0; t < sizes[j]; ++t)
      out[off + t] = static_cast<std::uint8_t>(new_offset[j] + t);
    off += sizes[j];
  }
  return out;
}

bool EWord::valid() const {
  if (entries.empty()) return false;
  for (const Perm& p : entries) {
    if (static_cast<int>(p.size()) != arity) return false;
    std::vector<char> seen(p.size(), 0);
    for (std::uint8_t v : p) {
      if (v >= p.size() || seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

std::string EWord::str() const {
  std::string s = "[";
  for (std::size_t t = 0; t < entries.size(); ++t) {
    if (t) s += "|";
    for (std::uint8_t v : entries[t]) s += static_cast<char>('0' + v);
  }
  return s + "]";
}

EWord eword_identity(int arity, int dim) {
  EWord w;
  w.arity = arity;
  w.entries.assign(dim + 1, perm_identity(arity));
  return w;
}

EWord eword_face(const EWord& w, int i) {
  if (w.dim() < 1 || i < 0 || i > w.dim()) throw std::runtime_error("eword_face: bad index");
  EWord out = w;
  out.entries.erase(out.entries.begin() + i);
  return out;
}

EWord eword_degeneracy(const EWord& w, int i) {
  if (i < 0 || i > w.dim()) throw std::runtime_error("eword_degeneracy: bad index");
  EWord out = w;
  out.entries.insert(out.entries.begin() + i, w.entries[i]);
  return out;
}

EWord eword_restrict(const EWord& w, const std::vector<int>& keep) {
  EWord out;
  out.arity = static_cast<int>(keep.size());
  out.entries.reserve(w.entries.size());
  for (const Perm& p : w.entries) out.entries.push_back(perm_restrict(p, keep));
  return out;
}

EWord eword_translate(const EWord& w, const Perm& rho) {
  EWord out;
  out.arity = w.arity;
  out.entries.reserve(w.entries.size());
  for (const Perm& p : w.entries) out.entries.push_back(perm_compose(p, rho));
  return out;
}

EWord operad_compose(const EWord& w, const std::vector<EWord>& inner) {
  if (static_cast<int>(inner.size()) != w.arity)
    throw std::runtime_error("operad_compose: arity mismatch");
  std::vector<int> sizes;
  sizes.reserve(inner.size());
  int n = 0;
  for (const EWord& v : inner) {
    if (v.dim() != w.dim()) throw std::runtime_error("operad_compose: dimension mismatch");
    sizes.push_back(v.arity);
    n += v.arity;
  }
  EWord out;
  out.arity = n;
  out.entries.reserve(w.entries.size());
  for (int t = 0; t <= w.dim(); ++t) {
    Perm sum(n);
    int off = 0;
    for (const EWord& v : inner) {
      for (int s = 0; s < v.arity; ++s)
        sum[off + s] = static_cast<std::uint8_t>(off + v.entries[t][s]);
      off += v.arity;
    }
    out.entries.push_back(perm_compose(block_perm(w.entries[t], sizes), sum));
  }
  return out;
}

}  // namespace rankfilt
