#include "rankfilt/word.hpp"

#include <cassert>

namespace rankfilt {

Mono word_to_mono(const DegeneracyWord& w, int gen_dim) {
  assert(w.valid());
  Mono f(gen_dim + 1);
  for (int t = 0; t <= gen_dim; ++t) f[t] = t;
  // innermost degeneracy first: duplicate position idx[t] walking right to left
  for (int t = w.size() - 1; t >= 0; --t) {
    int j = w.idx[t];
    assert(j >= 0 && j < static_cast<int>(f.size()));
    f.insert(f.begin() + j, f[j]);
  }
  return f;
}

DegeneracyWord mono_to_word(const Mono& f_in) {
  Mono f = f_in;
  DegeneracyWord w;
  // peel the largest duplicated position each time; the remaining duplicates
  // sit strictly below it, so the collected indices come out decreasing
  while (true) {
    int t = -1;
    for (int s = static_cast<int>(f.size()) - 2; s >= 0; --s)
      if (f[s] == f[s + 1]) {
        t = s;
        break;
      }
    if (t < 0) break;
    w.idx.push_back(t);
    f.erase(f.begin() + t);
  }
  assert(w.valid());
  // surjectivity: what remains must be the identity
  for (std::size_t s = 0; s < f.size(); ++s) assert(f[s] == static_cast<int>(s));
  return w;
}

Mono face_mono(int i, int n) {
  Mono f;
  f.reserve(n);
  for (int t = 0; t <= n; ++t)
    if (t != i) f.push_back(t);
  return f;
}

Mono compose_mono(const Mono& outer, const Mono& inner) {
  Mono f(inner.size());
  for (std::size_t t = 0; t < inner.size(); ++t) {
    assert(inner[t] >= 0 && inner[t] < static_cast<int>(outer.size()));
    f[t] = outer[inner[t]];
  }
  return f;
}

EpiMono epi_mono_factor(const Mono& f, int target_dim) {
  EpiMono r;
  std::vector<char> hit(target_dim + 1, 0);
  for (int v : f) hit[v] = 1;
  std::vector<int> rank(target_dim + 1, 0);
  int seen = 0;
  for (int v = 0; v <= target_dim; ++v) {
    if (hit[v])
      rank[v] = seen++;
    else
      r.omitted.push_back(v);
  }
  r.surj.resize(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) r.surj[t] = rank[f[t]];
  return r;
}

}  // namespace rankfilt
