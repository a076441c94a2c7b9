#include "rankfilt/sset.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>

#include "rankfilt/parallel.hpp"

namespace rankfilt {

int SSet::add_gen(int dim, std::string name) {
  int id = static_cast<int>(gens.size());
  gens.push_back({dim, {}, std::move(name)});
  if (static_cast<int>(by_dim.size()) <= dim) by_dim.resize(dim + 1);
  by_dim[dim].push_back(id);
  return id;
}

void SSet::set_faces(int gen, std::vector<SimplexRef> faces) {
  gens[gen].faces = std::move(faces);
}

void SSet::check_dim(int d, const char* what) const {
  if (d < 0) throw TruncationError(std::string(what) + ": negative dimension");
  if (d > truncation_dim)
    throw TruncationError(std::string(what) + ": dimension " + std::to_string(d) +
                          " exceeds truncation " + std::to_string(truncation_dim));
}

SimplexRef SSet::bp_at(int d) const {
  check_dim(d, "bp_at");
  DegeneracyWord w;
  for (int i = d - 1; i >= 0; --i) w.idx.push_back(i);
  return {std::move(w), basepoint};
}

SimplexRef SSet::face(const SimplexRef& r, int i) const {
  int d = dim_of(r);
  if (d < 1 || i < 0 || i > d) throw std::runtime_error("face: bad index");
  if (r.word.empty()) return gens[r.gen].faces[i];
  int gd = gens[r.gen].dim;
  Mono alpha = compose_mono(word_to_mono(r.word, gd), face_mono(i, d));
  EpiMono em = epi_mono_factor(alpha, gd);
  SimplexRef core{{}, r.gen};
  for (auto it = em.omitted.rbegin(); it != em.omitted.rend(); ++it) core = face(core, *it);
  Mono total = compose_mono(word_to_mono(core.word, gens[core.gen].dim), em.surj);
  return {mono_to_word(total), core.gen};
}

SimplexRef SSet::degeneracy(const SimplexRef& r, int i) const {
  int d = dim_of(r);
  check_dim(d + 1, "degeneracy");
  if (i < 0 || i > d) throw std::runtime_error("degeneracy: bad index");
  int gd = gens[r.gen].dim;
  DegeneracyWord si{{i}};
  Mono total = compose_mono(word_to_mono(r.word, gd), word_to_mono(si, d));
  return {mono_to_word(total), r.gen};
}

namespace {

// all monotone surjections [n] ->> [e], lexicographic
void surjections(int n, int e, std::vector<Mono>& out) {
  Mono cur;
  cur.reserve(n + 1);
  auto rec = [&](auto&& self, int t, int v) -> void {
    if (t > n) {
      if (v == e + 1) out.push_back(cur);
      return;
    }
    // remaining steps must still reach e
    for (int nv : {v, v + 1}) {
      if (nv > e + 1) continue;
      if (nv == 0) continue;
      cur.push_back(nv - 1);
      self(self, t + 1, nv);
      cur.pop_back();
    }
  };
  // first value is forced to 0
  cur.push_back(0);
  rec(rec, 1, 1);
}

}  // namespace

std::vector<SimplexRef> SSet::simplices(int d) const {
  check_dim(d, "simplices");
  std::vector<SimplexRef> out;
  for (int e = 0; e <= d && e < static_cast<int>(by_dim.size()); ++e) {
    std::vector<Mono> surjs;
    surjections(d, e, surjs);
    for (int g : by_dim[e])
      for (const Mono& f : surjs) out.push_back({mono_to_word(f), g});
  }
  return out;
}

int SSet::gen_count(int d) const {
  if (d < 0 || d >= static_cast<int>(by_dim.size())) return 0;
  return static_cast<int>(by_dim[d].size());
}

void SSet::validate() const {
  if (gens.empty() || gens[basepoint].dim != 0) throw std::runtime_error("validate: basepoint");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Gen& gen = gens[g];
    if (gen.dim > truncation_dim) throw std::runtime_error("validate: gen above truncation");
    if (gen.dim == 0) {
      if (!gen.faces.empty()) throw std::runtime_error("validate: vertex with faces");
      continue;
    }
    if (static_cast<int>(gen.faces.size()) != gen.dim + 1)
      throw std::runtime_error("validate: face count");
    for (const SimplexRef& f : gen.faces) {
      if (f.gen < 0 || f.gen >= static_cast<int>(gens.size()) || !f.word.valid())
        throw std::runtime_error("validate: bad face ref");
      if (dim_of(f) != gen.dim - 1) throw std::runtime_error("validate: face dim");
    }
  }
  // d_i d_j = d_{j-1} d_i for i < j, on every generator
  for (std::size_t g = 0; g < gens.size(); ++g) {
    int d = gens[g].dim;
    if (d < 2) continue;
    SimplexRef r{{}, static_cast<int>(g)};
    for (int j = 1; j <= d; ++j)
      for (int i = 0; i < j; ++i)
        if (face(face(r, j), i) != face(face(r, i), j - 1))
          throw std::runtime_error("validate: simplicial identity fails on " + gens[g].name);
  }
}

SSet sset_point(int truncation) {
  SSet s;
  s.truncation_dim = truncation;
  s.basepoint = s.add_gen(0, "*");
  return s;
}

SSet sset_s0(int truncation) {
  SSet s = sset_point(truncation);
  s.add_gen(0, "x");
  return s;
}

SSet sset_s1(int truncation) {
  SSet s = sset_point(truncation);
  int e = s.add_gen(1, "e");
  s.set_faces(e, {s.bp_at(0), s.bp_at(0)});
  return s;
}

SSet sset_s2(int truncation) {
  SSet s = sset_point(truncation);
  int w = s.add_gen(2, "w");
  s.set_faces(w, {s.bp_at(1), s.bp_at(1), s.bp_at(1)});
  return s;
}

SSet sset_finite(int m, int truncation) {
  SSet s = sset_point(truncation);
  for (int i = 1; i <= m; ++i) s.add_gen(0, std::to_string(i));
  return s;
}

SSet sset_model(const std::string& name, int truncation) {
  if (name == "point") return sset_point(truncation);
  if (name == "S0") return sset_s0(truncation);
  if (name == "S1") return sset_s1(truncation);
  if (name == "S2") return sset_s2(truncation);
  throw std::runtime_error("unknown model: " + name);
}

namespace {

using Tuple = std::vector<std::vector<int>>;  // permutation tuple, one-line form

// peel repeated adjacent entries: the unique normal form s_W(core)
template <class Elem>
std::pair<DegeneracyWord, std::vector<Elem>> peel_repeats(std::vector<Elem> v) {
  DegeneracyWord w;
  while (true) {
    int t = -1;
    for (int s = static_cast<int>(v.size()) - 2; s >= 0; --s)
      if (v[s] == v[s + 1]) {
        t = s;
        break;
      }
    if (t < 0) break;
    w.idx.push_back(t);
    v.erase(v.begin() + t);
  }
  return {std::move(w), std::move(v)};
}

}  // namespace

SSet esigma_nerve(int n, int truncation) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do
    perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  SSet s;
  s.truncation_dim = truncation;
  std::map<Tuple, int> id_of;
  // nondegenerate d-simplices: tuples with no adjacent repeat
  std::vector<Tuple> level = {{}};
  for (int d = 0; d <= truncation; ++d) {
    std::vector<Tuple> next;
    for (const Tuple& t : level)
      for (const auto& q : perms) {
        if (!t.empty() && t.back() == q) continue;
        Tuple u = t;
        u.push_back(q);
        next.push_back(u);
      }
    level = std::move(next);
    for (const Tuple& t : level) {
      int id = s.add_gen(d, "");
      id_of[t] = id;
    }
  }
  if (!s.by_dim.empty()) s.basepoint = s.by_dim[0][0];
  // faces delete an entry, then normalize
  for (const auto& [t, id] : id_of) {
    int d = static_cast<int>(t.size()) - 1;
    if (d == 0) continue;
    std::vector<SimplexRef> faces;
    for (int i = 0; i <= d; ++i) {
      Tuple u = t;
      u.erase(u.begin() + i);
      auto [w, core] = peel_repeats(std::move(u));
      faces.push_back({w, id_of.at(core)});
    }
    s.set_faces(id, std::move(faces));
  }
  return s;
}

SimplexRef SSetMap::apply(const SimplexRef& r) const {
  const SimplexRef& im = gen_image[r.gen];
  int gd = src->gens[r.gen].dim;
  Mono total = compose_mono(word_to_mono(im.word, dst->gens[im.gen].dim),
                            word_to_mono(r.word, gd));
  return {mono_to_word(total), im.gen};
}

bool is_simplicial(const SSetMap& f, std::string* why) {
  if (f.gen_image.size() != f.src->gens.size()) {
    if (why) *why = "image table size";
    return false;
  }
  if (!f.dst->is_bp(f.gen_image[f.src->basepoint])) {
    if (why) *why = "basepoint not preserved";
    return false;
  }
  for (std::size_t g = 0; g < f.src->gens.size(); ++g) {
    int d = f.src->gens[g].dim;
    if (f.dst->dim_of(f.gen_image[g]) != d) {
      if (why) *why = "dimension of image of " + f.src->gens[g].name;
      return false;
    }
    SimplexRef r{{}, static_cast<int>(g)};
    for (int i = 0; i <= d && d >= 1; ++i) {
      if (f.apply(f.src->face(r, i)) != f.dst->face(f.apply(r), i)) {
        if (why)
          *why = "face " + std::to_string(i) + " of generator " + f.src->gens[g].name;
        return false;
      }
    }
  }
  return true;
}

bool is_isomorphism(const SSetMap& f) {
  if (!is_simplicial(f)) return false;
  // bijective on generators with nondegenerate images
  std::set<int> hit;
  for (std::size_t g = 0; g < f.src->gens.size(); ++g) {
    if (!f.gen_image[g].word.empty()) return false;
    hit.insert(f.gen_image[g].gen);
  }
  return hit.size() == f.src->gens.size() && hit.size() == f.dst->gens.size();
}

namespace {

// joint normal form of a tuple of refs sitting at common dimension d:
// extract the common degeneracy word, leaving a jointly nondegenerate core
std::pair<DegeneracyWord, std::vector<SimplexRef>> joint_peel(
    const std::vector<const SSet*>& factors, std::vector<SimplexRef> parts, int d) {
  std::vector<Mono> monos;
  monos.reserve(parts.size());
  for (std::size_t t = 0; t < parts.size(); ++t)
    monos.push_back(word_to_mono(parts[t].word, factors[t]->gens[parts[t].gen].dim));
  DegeneracyWord w;
  int cur = d;
  while (true) {
    int pos = -1;
    for (int s = cur - 1; s >= 0 && pos < 0; --s) {
      bool all = true;
      for (const Mono& f : monos)
        if (f[s] != f[s + 1]) {
          all = false;
          break;
        }
      if (all) pos = s;
    }
    if (pos < 0) break;
    w.idx.push_back(pos);
    for (Mono& f : monos) f.erase(f.begin() + pos);
    --cur;
  }
  for (std::size_t t = 0; t < parts.size(); ++t)
    parts[t] = {mono_to_word(monos[t]), parts[t].gen};
  return {std::move(w), std::move(parts)};
}

}  // namespace

SimplexRef ProductIndex::ref_of_tuple(std::vector<SimplexRef> parts) const {
  int d = factors[0]->dim_of(parts[0]);
  auto [w, core] = joint_peel(factors, std::move(parts), d);
  return {std::move(w), gen_of_parts.at(core)};
}

SSet product_n(const std::vector<const SSet*>& factors, ProductIndex* index) {
  if (factors.empty()) throw std::runtime_error("product_n: no factors");
  int trunc = factors[0]->truncation_dim;
  for (const SSet* f : factors) trunc = std::min(trunc, f->truncation_dim);

  SSet s;
  s.truncation_dim = trunc;
  ProductIndex local;
  ProductIndex& ix = index ? *index : local;
  ix.factors = factors;

  for (int d = 0; d <= trunc; ++d) {
    // enumerate tuples of level-d simplices, keep jointly nondegenerate ones
    std::vector<std::vector<SimplexRef>> tuples = {{}};
    for (const SSet* f : factors) {
      std::vector<SimplexRef> level = f->simplices(d);
      std::vector<std::vector<SimplexRef>> next;
      next.reserve(tuples.size() * level.size());
      for (const auto& t : tuples)
        for (const auto& r : level) {
          auto u = t;
          u.push_back(r);
          next.push_back(std::move(u));
        }
      tuples = std::move(next);
    }
    for (auto& t : tuples) {
      auto [w, core] = joint_peel(factors, t, d);
      if (!w.empty()) continue;  // degenerate as a tuple
      std::string name;
      for (std::size_t k = 0; k < t.size(); ++k) {
        const SSet* f = factors[k];
        name += (k ? "," : "(") +
                (t[k].word.empty() ? f->gens[t[k].gen].name : "s." + f->gens[t[k].gen].name);
      }
      name += ")";
      int id = s.add_gen(d, name);
      ix.gen_parts.push_back(t);
      ix.gen_of_parts[t] = id;
    }
  }
  // basepoint: tuple of basepoints at dim 0
  {
    std::vector<SimplexRef> bp;
    for (const SSet* f : factors) bp.push_back(f->bp_at(0));
    s.basepoint = ix.gen_of_parts.at(bp);
  }
  // faces, componentwise then joint normal form
  for (std::size_t g = 0; g < ix.gen_parts.size(); ++g) {
    int d = s.gens[g].dim;
    if (d == 0) continue;
    std::vector<SimplexRef> faces;
    for (int i = 0; i <= d; ++i) {
      std::vector<SimplexRef> parts;
      for (std::size_t t = 0; t < factors.size(); ++t)
        parts.push_back(factors[t]->face(ix.gen_parts[g][t], i));
      auto [w, core] = joint_peel(factors, std::move(parts), d - 1);
      faces.push_back({w, ix.gen_of_parts.at(core)});
    }
    s.set_faces(static_cast<int>(g), std::move(faces));
  }
  return s;
}

SSet wedge(const SSet& a, const SSet& b, WedgeIndex* index) {
  SSet s;
  s.truncation_dim = std::min(a.truncation_dim, b.truncation_dim);
  WedgeIndex local;
  WedgeIndex& ix = index ? *index : local;
  ix.into.assign(2, {});
  ix.into[0].assign(a.gens.size(), -1);
  ix.into[1].assign(b.gens.size(), -1);

  s.basepoint = s.add_gen(0, "*");
  ix.from.push_back({0, a.basepoint});
  ix.into[0][a.basepoint] = s.basepoint;
  ix.into[1][b.basepoint] = s.basepoint;

  const SSet* sides[2] = {&a, &b};
  for (int side = 0; side < 2; ++side)
    for (int d = 0; d <= s.truncation_dim; ++d)
      for (int g : (d < static_cast<int>(sides[side]->by_dim.size()) ? sides[side]->by_dim[d]
                                                                     : std::vector<int>{}))
        if (g != sides[side]->basepoint) {
          int id = s.add_gen(d, (side ? "R." : "L.") + sides[side]->gens[g].name);
          ix.into[side][g] = id;
          ix.from.push_back({side, g});
        }
  for (std::size_t w = 0; w < ix.from.size(); ++w) {
    auto [side, g] = ix.from[w];
    int d = sides[side]->gens[g].dim;
    if (d == 0 || static_cast<int>(w) == s.basepoint) continue;
    std::vector<SimplexRef> faces;
    for (const SimplexRef& f : sides[side]->gens[g].faces)
      faces.push_back({f.word, ix.into[side][f.gen]});
    s.set_faces(static_cast<int>(w), std::move(faces));
  }
  return s;
}

SSet quotient_by_action(const SSet& s, const std::vector<std::vector<int>>& action_gens,
                        std::vector<int>* orbit_of_gen) {
  int n = static_cast<int>(s.gens.size());
  // validate and close the group under composition
  auto check_aut = [&](const std::vector<int>& p) {
    if (static_cast<int>(p.size()) != n) throw std::runtime_error("quotient: action size");
    std::vector<char> seen(n, 0);
    for (int v : p) {
      if (v < 0 || v >= n || seen[v]) throw std::runtime_error("quotient: not a permutation");
      seen[v] = 1;
    }
    for (int g = 0; g < n; ++g) {
      if (s.gens[p[g]].dim != s.gens[g].dim) throw std::runtime_error("quotient: dim mismatch");
      for (int i = 0; i < static_cast<int>(s.gens[g].faces.size()); ++i) {
        SimplexRef f = s.gens[g].faces[i];
        SimplexRef mapped{f.word, p[f.gen]};
        if (mapped != s.gens[p[g]].faces[i])
          throw std::runtime_error("quotient: action does not respect faces");
      }
    }
  };
  std::set<std::vector<int>> group;
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  group.insert(id);
  std::vector<std::vector<int>> frontier = {id};
  for (const auto& g : action_gens) check_aut(g);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& f : frontier)
      for (const auto& g : action_gens) {
        std::vector<int> c(n);
        for (int i = 0; i < n; ++i) c[i] = g[f[i]];
        if (group.insert(c).second) next.push_back(std::move(c));
      }
    frontier = std::move(next);
  }

  // orbits; representative = smallest generator id (min stays the root)
  std::vector<int> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&](int x) {
    while (rep[x] != x) x = rep[x] = rep[rep[x]];
    return x;
  };
  for (const auto& g : group)
    for (int i = 0; i < n; ++i) {
      int a = find(i), b = find(g[i]);
      if (a != b) rep[std::max(a, b)] = std::min(a, b);
    }
  for (int i = 0; i < n; ++i) rep[i] = find(i);

  SSet q;
  q.truncation_dim = s.truncation_dim;
  std::vector<int> orbit_id(n, -1);
  for (int d = 0; d <= s.truncation_dim; ++d)
    for (int g : (d < static_cast<int>(s.by_dim.size()) ? s.by_dim[d] : std::vector<int>{}))
      if (rep[g] == g) orbit_id[g] = q.add_gen(d, "[" + s.gens[g].name + "]");
  for (int g = 0; g < n; ++g) orbit_id[g] = orbit_id[rep[g]];
  q.basepoint = orbit_id[s.basepoint];
  for (int g = 0; g < n; ++g) {
    if (rep[g] != g || s.gens[g].dim == 0) continue;
    std::vector<SimplexRef> faces;
    for (const SimplexRef& f : s.gens[g].faces) faces.push_back({f.word, orbit_id[f.gen]});
    q.set_faces(orbit_id[g], std::move(faces));
  }
  if (orbit_of_gen) *orbit_of_gen = orbit_id;
  return q;
}

Pi0 pi0(const SSet& s) {
  if (s.truncation_dim < 1) throw TruncationError("pi0 needs dimension 1");
  const std::vector<int>& verts = s.by_dim[0];
  std::vector<int> pos(s.gens.size(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);

  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  if (static_cast<int>(s.by_dim.size()) > 1)
    for (int e : s.by_dim[1]) {
      SimplexRef r{{}, e};
      int u = find(pos[s.face(r, 0).gen]);
      int v = find(pos[s.face(r, 1).gen]);
      parent[u] = v;
    }
  Pi0 p;
  p.class_of_vertex.resize(verts.size());
  std::map<int, int> of_root;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    int r = find(static_cast<int>(i));
    auto [it, fresh] = of_root.try_emplace(r, p.classes);
    if (fresh) ++p.classes;
    p.class_of_vertex[i] = it->second;
  }
  p.bp_class = p.class_of_vertex[pos[s.basepoint]];
  return p;
}

IntMat boundary_matrix(const SSet& s, int d) {
  s.check_dim(d, "boundary_matrix");
  if (d == 0) {
    IntMat m(1, s.gen_count(0));
    for (int j = 0; j < m.cols; ++j) m.at(0, j) = 1;
    return m;
  }
  std::vector<int> pos(s.gens.size(), -1);
  for (int i = 0; i < s.gen_count(d - 1); ++i) pos[s.by_dim[d - 1][i]] = i;
  IntMat m(s.gen_count(d - 1), s.gen_count(d));
  for (int j = 0; j < s.gen_count(d); ++j) {
    int g = s.by_dim[d][j];
    for (int i = 0; i <= d; ++i) {
      const SimplexRef& f = s.gens[g].faces[i];
      if (!f.word.empty()) continue;  // degenerate faces vanish in the normalized complex
      m.at(pos[f.gen], j) = checked_add(m.at(pos[f.gen], j), (i % 2) ? -1 : 1);
    }
  }
  return m;
}

std::vector<AbGroup> reduced_homology(const SSet& s, int max_deg, bool parallel) {
  if (s.truncation_dim < max_deg + 1)
    throw TruncationError("reduced_homology: needs truncation >= max_deg+1");
  std::vector<IntMat> bd(max_deg + 2);
  par::for_index(static_cast<std::size_t>(max_deg) + 2, parallel,
                 [&](std::size_t d) { bd[d] = boundary_matrix(s, static_cast<int>(d)); });
  std::vector<AbGroup> h(max_deg + 1);
  par::for_index(static_cast<std::size_t>(max_deg) + 1, parallel, [&](std::size_t d) {
    h[d] = homology_at(s.gen_count(static_cast<int>(d)), bd[d], bd[d + 1]);
  });
  return h;
}

SSet permute_generators(const SSet& s, const std::vector<int>& new_id_of) {
  int n = static_cast<int>(s.gens.size());
  SSet out;
  out.truncation_dim = s.truncation_dim;
  out.gens.resize(n);
  out.by_dim.assign(s.by_dim.size(), {});
  for (int g = 0; g < n; ++g) {
    const auto& gen = s.gens[g];
    SSet::Gen ng{gen.dim, {}, gen.name};
    for (const SimplexRef& f : gen.faces) ng.faces.push_back({f.word, new_id_of[f.gen]});
    out.gens[new_id_of[g]] = std::move(ng);
  }
  for (int d = 0; d < static_cast<int>(out.by_dim.size()); ++d)
    for (int g = 0; g < n; ++g)
      if (out.gens[g].dim == d) out.by_dim[d].push_back(g);
  out.basepoint = new_id_of[s.basepoint];
  return out;
}

}  // namespace rankfilt
