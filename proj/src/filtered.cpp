#include "rankfilt/filtered.hpp"

namespace rankfilt {

void FilteredSSet::validate() const {
  s.validate();
  if (phi.size() != s.gens.size()) throw std::runtime_error("filtered: phi size");
  for (std::size_t g = 0; g < s.gens.size(); ++g) {
    bool bp = static_cast<int>(g) == s.basepoint;
    if (bp != (phi[g] == 0))
      throw std::runtime_error("filtered: phi vanishes exactly at the basepoint");
    for (const SimplexRef& f : s.gens[g].faces)
      if (phi[f.gen] > phi[g]) throw std::runtime_error("filtered: phi grows along a face");
  }
}

FilteredSSet trivially_filtered(SSet s, int level) {
  FilteredSSet x;
  x.phi.assign(s.gens.size(), level);
  x.phi[s.basepoint] = 0;
  x.s = std::move(s);
  return x;
}

FilteredSSet filtered_model(const std::string& name, int truncation) {
  return trivially_filtered(sset_model(name, truncation));
}

FilteredSSet filtered_fin(int m, int truncation) {
  return trivially_filtered(sset_finite(m, truncation));
}

FilteredSSet filtration_stage(const FilteredSSet& x, int m, std::vector<int>* gen_map) {
  FilteredSSet out;
  out.s.truncation_dim = x.s.truncation_dim;
  std::vector<int> map(x.s.gens.size(), -1);
  for (int d = 0; d <= x.s.truncation_dim && d < static_cast<int>(x.s.by_dim.size()); ++d)
    for (int g : x.s.by_dim[d])
      if (x.phi[g] <= m) {
        map[g] = out.s.add_gen(d, x.s.gens[g].name);
        out.phi.push_back(x.phi[g]);
      }
  out.s.basepoint = map[x.s.basepoint];
  for (std::size_t g = 0; g < x.s.gens.size(); ++g) {
    if (map[g] < 0 || x.s.gens[g].dim == 0) continue;
    std::vector<SimplexRef> faces;
    for (const SimplexRef& f : x.s.gens[g].faces) {
      if (map[f.gen] < 0) throw std::runtime_error("filtration_stage: face escapes the stage");
      faces.push_back({f.word, map[f.gen]});
    }
    out.s.set_faces(map[g], std::move(faces));
  }
  if (gen_map) *gen_map = std::move(map);
  return out;
}

FilteredSSet wedge_filtered(const FilteredSSet& a, const FilteredSSet& b, WedgeIndex* index) {
  WedgeIndex local;
  WedgeIndex& ix = index ? *index : local;
  FilteredSSet out;
  out.s = wedge(a.s, b.s, &ix);
  out.phi.resize(out.s.gens.size());
  const FilteredSSet* sides[2] = {&a, &b};
  for (std::size_t w = 0; w < ix.from.size(); ++w)
    out.phi[w] = sides[ix.from[w].first]->phi[ix.from[w].second];
  return out;
}

FilteredSSet product_filtered(const FilteredSSet& a, const FilteredSSet& b, ProductIndex* index) {
  ProductIndex local;
  ProductIndex& ix = index ? *index : local;
  FilteredSSet out;
  out.s = product_n({&a.s, &b.s}, &ix);
  out.phi.resize(out.s.gens.size());
  for (std::size_t g = 0; g < ix.gen_parts.size(); ++g)
    out.phi[g] = a.phi[ix.gen_parts[g][0].gen] + b.phi[ix.gen_parts[g][1].gen];
  return out;
}

bool is_filtered_map(const SSetMap& f, const FilteredSSet& src, const FilteredSSet& dst,
                     std::string* why) {
  if (!is_simplicial(f, why)) return false;
  for (std::size_t g = 0; g < src.s.gens.size(); ++g)
    if (dst.phi_of(f.gen_image[g]) > src.phi[g]) {
      if (why) *why = "filtration grows on " + src.s.gens[g].name;
      return false;
    }
  return true;
}

}  // namespace rankfilt
