#include "rankfilt/space.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "rankfilt/parallel.hpp"

namespace rankfilt {

Space space_base(const FilteredSSet* fs) {
  Space s;
  s.kind = SK::Base;
  s.base = fs;
  return s;
}

Space space_prod(std::vector<Space> factors) {
  if (factors.empty()) throw std::runtime_error("space_prod: no factors");
  Space s;
  s.kind = SK::Prod;
  s.kids = std::move(factors);
  return s;
}

Space space_wedge(Space a, Space b) {
  Space s;
  s.kind = SK::Wedge;
  s.kids.push_back(std::move(a));
  s.kids.push_back(std::move(b));
  return s;
}

Space space_c(Space inner, int cap) {
  if (cap < 0) throw std::runtime_error("space_c: cap required");
  Space s;
  s.kind = SK::C;
  s.cap = cap;
  s.kids.push_back(std::move(inner));
  return s;
}

Space space_sp(Space inner, int cap) {
  if (cap < 0) throw std::runtime_error("space_sp: cap required");
  Space s;
  s.kind = SK::Sp;
  s.cap = cap;
  s.kids.push_back(std::move(inner));
  return s;
}

Space space_filter(Space inner, int m) {
  if (m < 0) throw std::runtime_error("space_filter: level required");
  Space s;
  s.kind = SK::Filter;
  s.m = m;
  s.kids.push_back(std::move(inner));
  return s;
}

std::string space_str(const Space& s) {
  switch (s.kind) {
    case SK::Base:
      return "B";
    case SK::Prod: {
      std::string out = "(";
      for (std::size_t i = 0; i < s.kids.size(); ++i)
        out += (i ? " x " : "") + space_str(s.kids[i]);
      return out + ")";
    }
    case SK::Wedge:
      return "(" + space_str(s.kids[0]) + " v " + space_str(s.kids[1]) + ")";
    case SK::C:
      return "C<" + std::to_string(s.cap) + "> " + space_str(s.kids[0]);
    case SK::Sp:
      return "Sp<" + std::to_string(s.cap) + "> " + space_str(s.kids[0]);
    case SK::Filter:
      return "f" + std::to_string(s.m) + " " + space_str(s.kids[0]);
  }
  return "?";
}

namespace {

constexpr int kNoBound = std::numeric_limits<int>::max();

Space tighten_rec(Space s, int bound) {
  switch (s.kind) {
    case SK::Base:
      break;
    case SK::Prod:
    case SK::Wedge:
      for (Space& k : s.kids) k = tighten_rec(std::move(k), bound);
      break;
    case SK::C:
    case SK::Sp:
      if (bound < s.cap) s.cap = bound;
      s.kids[0] = tighten_rec(std::move(s.kids[0]), std::min(bound, s.cap));
      break;
    case SK::Filter:
      s.kids[0] = tighten_rec(std::move(s.kids[0]), std::min(bound, s.m));
      break;
  }
  return s;
}

void need(bool ok, const char* what) {
  if (!ok) throw std::runtime_error(std::string("space: ") + what);
}

void check_kind(const Space& s, const Value& v) {
  switch (s.kind) {
    case SK::Base: need(v.kind == VK::Base, "expected a base point"); break;
    case SK::Prod: need(v.kind == VK::Tuple && v.kids.size() == s.kids.size(), "expected a tuple"); break;
    case SK::Wedge: need(v.kind == VK::Side && v.kids.size() == 1, "expected a summand point"); break;
    case SK::C: need(v.kind == VK::CPt, "expected an operad point"); break;
    case SK::Sp: need(v.kind == VK::SpPt, "expected a multiset point"); break;
    case SK::Filter: break;
  }
}

// dimension readable from the value alone; -1 for an empty multiset
int value_dim(const Space& s, const Value& v) {
  check_kind(s, v);
  switch (s.kind) {
    case SK::Base:
      return s.base->s.dim_of(v.ref);
    case SK::Prod:
      return value_dim(s.kids[0], v.kids[0]);
    case SK::Wedge:
      return value_dim(s.kids[v.side], v.kids[0]);
    case SK::C:
      return v.word.dim();
    case SK::Sp:
      return v.kids.empty() ? -1 : value_dim(s.kids[0], v.kids[0]);
    case SK::Filter:
      return value_dim(s.kids[0], v);
  }
  return -1;
}

}  // namespace

Space tighten(Space s) { return tighten_rec(std::move(s), kNoBound); }

bool is_bp(const Space& s, const Value& v) {
  check_kind(s, v);
  switch (s.kind) {
    case SK::Base:
      return s.base->s.is_bp(v.ref);
    case SK::Prod:
      for (std::size_t i = 0; i < s.kids.size(); ++i)
        if (!is_bp(s.kids[i], v.kids[i])) return false;
      return true;
    case SK::Wedge:
      return is_bp(s.kids[v.side], v.kids[0]);
    case SK::C:
    case SK::Sp:
      return v.kids.empty();
    case SK::Filter:
      return is_bp(s.kids[0], v);
  }
  return false;
}

Value bp_at(const Space& s, int d) {
  switch (s.kind) {
    case SK::Base:
      need(d >= 0, "basepoint of a base space needs a dimension");
      return v_base(s.base->s.bp_at(d));
    case SK::Prod: {
      std::vector<Value> comps;
      for (const Space& k : s.kids) comps.push_back(bp_at(k, d));
      return v_tuple(std::move(comps));
    }
    case SK::Wedge:
      return v_side(0, bp_at(s.kids[0], d));
    case SK::C:
      need(d >= 0, "basepoint of an operad level needs a dimension");
      return v_cpt(eword_identity(0, d), {});
    case SK::Sp:
      return v_sppt({});
    case SK::Filter:
      return bp_at(s.kids[0], d);
  }
  throw std::runtime_error("bp_at: bad space");
}

int phi(const Space& s, const Value& v) {
  check_kind(s, v);
  switch (s.kind) {
    case SK::Base:
      return s.base->phi_of(v.ref);
    case SK::Prod: {
      int total = 0;
      for (std::size_t i = 0; i < s.kids.size(); ++i) total += phi(s.kids[i], v.kids[i]);
      return total;
    }
    case SK::Wedge:
      return phi(s.kids[v.side], v.kids[0]);
    case SK::C:
    case SK::Sp: {
      int total = 0;
      for (const Value& k : v.kids) total += phi(s.kids[0], k);
      return total;
    }
    case SK::Filter:
      return phi(s.kids[0], v);
  }
  return 0;
}

Value canon(const Space& s, const Value& v) {
  check_kind(s, v);
  switch (s.kind) {
    case SK::Base:
      return v;
    case SK::Prod: {
      std::vector<Value> comps;
      comps.reserve(v.kids.size());
      for (std::size_t i = 0; i < s.kids.size(); ++i)
        comps.push_back(canon(s.kids[i], v.kids[i]));
      return v_tuple(std::move(comps));
    }
    case SK::Wedge: {
      Value cx = canon(s.kids[v.side], v.kids[0]);
      if (is_bp(s.kids[v.side], cx)) {
        int d = value_dim(s.kids[v.side], cx);
        return v_side(0, bp_at(s.kids[0], d));
      }
      return v_side(v.side, std::move(cx));
    }
    case SK::C: {
      std::vector<Value> coords;
      std::vector<int> keep;
      for (std::size_t i = 0; i < v.kids.size(); ++i) {
        Value c = canon(s.kids[0], v.kids[i]);
        if (is_bp(s.kids[0], c)) continue;
        keep.push_back(static_cast<int>(i));
        coords.push_back(std::move(c));
      }
      EWord w = eword_restrict(v.word, keep);
      if (w.arity > 0 && !perm_is_identity(w.entries[0])) {
        Perm rho = perm_inverse(w.entries[0]);
        w = eword_translate(w, rho);
        std::vector<Value> permuted(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) permuted[i] = std::move(coords[rho[i]]);
        coords = std::move(permuted);
      }
      return v_cpt(std::move(w), std::move(coords));
    }
    case SK::Sp: {
      std::vector<Value> elems;
      for (const Value& k : v.kids) {
        Value c = canon(s.kids[0], k);
        if (!is_bp(s.kids[0], c)) elems.push_back(std::move(c));
      }
      std::sort(elems.begin(), elems.end());
      return v_sppt(std::move(elems));
    }
    case SK::Filter:
      return canon(s.kids[0], v);
  }
  return v;
}

namespace {

bool contains_rec(const Space& s, const Value& v, int d, bool relax) {
  if (s.kind != SK::Filter) {
    switch (s.kind) {
      case SK::Base:
        if (v.kind != VK::Base) return false;
        break;
      case SK::Prod:
        if (v.kind != VK::Tuple || v.kids.size() != s.kids.size()) return false;
        break;
      case SK::Wedge:
        if (v.kind != VK::Side || v.kids.size() != 1) return false;
        break;
      case SK::C:
        if (v.kind != VK::CPt) return false;
        break;
      case SK::Sp:
        if (v.kind != VK::SpPt) return false;
        break;
      default:
        break;
    }
  }
  switch (s.kind) {
    case SK::Base: {
      const SSet& ss = s.base->s;
      if (v.ref.gen < 0 || v.ref.gen >= static_cast<int>(ss.gens.size())) return false;
      if (!v.ref.word.valid()) return false;
      return ss.dim_of(v.ref) == d;
    }
    case SK::Prod:
      // a root product's outermost caps are its factor roots
      for (std::size_t i = 0; i < s.kids.size(); ++i)
        if (!contains_rec(s.kids[i], v.kids[i], d, relax)) return false;
      return true;
    case SK::Wedge: {
      if (v.side != 0 && v.side != 1) return false;
      if (!contains_rec(s.kids[v.side], v.kids[0], d, relax)) return false;
      // canonical: the basepoint lives in the left summand
      if (v.side == 1 && is_bp(s.kids[1], v.kids[0])) return false;
      return true;
    }
    case SK::C: {
      if (!v.word.valid() || !v.word.id_led()) return false;
      if (v.word.dim() != d) return false;
      if (v.word.arity != static_cast<int>(v.kids.size())) return false;
      int total = 0;
      for (const Value& k : v.kids) {
        if (!contains_rec(s.kids[0], k, d, false)) return false;
        if (is_bp(s.kids[0], k)) return false;
        total += phi(s.kids[0], k);
      }
      return relax || total <= s.cap;
    }
    case SK::Sp: {
      int total = 0;
      for (std::size_t i = 0; i < v.kids.size(); ++i) {
        if (!contains_rec(s.kids[0], v.kids[i], d, false)) return false;
        if (is_bp(s.kids[0], v.kids[i])) return false;
        if (i + 1 < v.kids.size() && v.kids[i + 1] < v.kids[i]) return false;
        total += phi(s.kids[0], v.kids[i]);
      }
      return relax || total <= s.cap;
    }
    case SK::Filter:
      if (!contains_rec(s.kids[0], v, d, relax)) return false;
      return phi(s.kids[0], v) <= s.m;
  }
  return false;
}

}  // namespace

bool space_contains(const Space& s, const Value& v, int d, bool relax_root_cap) {
  return contains_rec(s, v, d, relax_root_cap);
}

namespace {

Value face_raw(const Space& s, const Value& v, int i) {
  check_kind(s, v);
  switch (s.kind) {
    case SK::Base:
      return v_base(s.base->s.face(v.ref, i));
    case SK::Prod: {
      std::vector<Value> comps;
      for (std::size_t t = 0; t < s.kids.size(); ++t)
        comps.push_back(face_raw(s.kids[t], v.kids[t], i));
      return v_tuple(std::move(comps));
    }
    case SK::Wedge:
      return v_side(v.side, face_raw(s.kids[v.side], v.kids[0], i));
    case SK::C: {
      std::vector<Value> coords;
      for (const Value& k : v.kids) coords.push_back(face_raw(s.kids[0], k, i));
      return v_cpt(eword_face(v.word, i), std::move(coords));
    }
    case SK::Sp: {
      std::vector<Value> elems;
      for (const Value& k : v.kids) elems.push_back(face_raw(s.kids[0], k, i));
      return v_sppt(std::move(elems));
    }
    case SK::Filter:
      return face_raw(s.kids[0], v, i);
  }
  throw std::runtime_error("face: bad space");
}

Value degen_raw(const Space& s, const Value& v, int i) {
  check_kind(s, v);
  switch (s.kind) {
    case SK::Base:
      return v_base(s.base->s.degeneracy(v.ref, i));
    case SK::Prod: {
      std::vector<Value> comps;
      for (std::size_t t = 0; t < s.kids.size(); ++t)
        comps.push_back(degen_raw(s.kids[t], v.kids[t], i));
      return v_tuple(std::move(comps));
    }
    case SK::Wedge:
      return v_side(v.side, degen_raw(s.kids[v.side], v.kids[0], i));
    case SK::C: {
      std::vector<Value> coords;
      for (const Value& k : v.kids) coords.push_back(degen_raw(s.kids[0], k, i));
      return v_cpt(eword_degeneracy(v.word, i), std::move(coords));
    }
    case SK::Sp: {
      std::vector<Value> elems;
      for (const Value& k : v.kids) elems.push_back(degen_raw(s.kids[0], k, i));
      return v_sppt(std::move(elems));
    }
    case SK::Filter:
      return degen_raw(s.kids[0], v, i);
  }
  throw std::runtime_error("degen: bad space");
}

}  // namespace

Value face(const Space& s, const Value& v, int i) { return canon(s, face_raw(s, v, i)); }
Value degen(const Space& s, const Value& v, int i) { return canon(s, degen_raw(s, v, i)); }

namespace {

// ordered tuples of non-basepoint values with total weight <= budget
void ordered_tuples(const std::vector<std::pair<Value, int>>& pool, int arity, int budget,
                    std::vector<Value>& cur, std::vector<std::vector<Value>>& out) {
  if (static_cast<int>(cur.size()) == arity) {
    out.push_back(cur);
    return;
  }
  for (const auto& [val, w] : pool)
    if (w <= budget) {
      cur.push_back(val);
      ordered_tuples(pool, arity, budget - w, cur, out);
      cur.pop_back();
    }
}

// sorted multisets (by index, repeats allowed) with total weight <= budget
void sorted_multisets(const std::vector<std::pair<Value, int>>& pool, std::size_t from,
                      int budget, std::vector<Value>& cur, std::vector<Value>& out) {
  out.push_back(v_sppt(cur));
  for (std::size_t j = from; j < pool.size(); ++j)
    if (pool[j].second <= budget) {
      cur.push_back(pool[j].first);
      sorted_multisets(pool, j, budget - pool[j].second, cur, out);
      cur.pop_back();
    }
}

std::vector<EWord> id_led_words(int arity, int dim) {
  std::vector<EWord> out;
  EWord w;
  w.arity = arity;
  w.entries.push_back(perm_identity(arity));
  out.push_back(w);
  auto perms = all_perms(arity);
  for (int t = 1; t <= dim; ++t) {
    std::vector<EWord> next;
    next.reserve(out.size() * perms.size());
    for (const EWord& u : out)
      for (const Perm& p : perms) {
        EWord e = u;
        e.entries.push_back(p);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<Value> enumerate_level(const Space& s, int d) {
  switch (s.kind) {
    case SK::Base: {
      std::vector<Value> out;
      for (const SimplexRef& r : s.base->s.simplices(d)) out.push_back(v_base(r));
      return out;
    }
    case SK::Prod: {
      std::vector<std::vector<Value>> tuples = {{}};
      for (const Space& k : s.kids) {
        std::vector<Value> level = enumerate_level(k, d);
        std::vector<std::vector<Value>> next;
        next.reserve(tuples.size() * level.size());
        for (const auto& t : tuples)
          for (const Value& x : level) {
            auto u = t;
            u.push_back(x);
            next.push_back(std::move(u));
          }
        tuples = std::move(next);
      }
      std::vector<Value> out;
      out.reserve(tuples.size());
      for (auto& t : tuples) out.push_back(v_tuple(std::move(t)));
      return out;
    }
    case SK::Wedge: {
      std::vector<Value> out = {bp_at(s, d)};
      for (int side = 0; side < 2; ++side)
        for (const Value& x : enumerate_level(s.kids[side], d))
          if (!is_bp(s.kids[side], x)) out.push_back(v_side(side, x));
      return out;
    }
    case SK::C: {
      std::vector<std::pair<Value, int>> pool;
      for (const Value& x : enumerate_level(s.kids[0], d))
        if (!is_bp(s.kids[0], x)) {
          int w = phi(s.kids[0], x);
          if (w <= s.cap) pool.emplace_back(x, w);
        }
      std::vector<Value> out;
      for (int arity = 0; arity <= s.cap; ++arity) {
        std::vector<std::vector<Value>> tuples;
        std::vector<Value> cur;
        ordered_tuples(pool, arity, s.cap, cur, tuples);
        if (tuples.empty()) break;
        auto words = id_led_words(arity, d);
        for (const auto& t : tuples)
          for (const EWord& w : words) out.push_back(v_cpt(w, t));
      }
      return out;
    }
    case SK::Sp: {
      std::vector<std::pair<Value, int>> pool;
      for (const Value& x : enumerate_level(s.kids[0], d))
        if (!is_bp(s.kids[0], x)) {
          int w = phi(s.kids[0], x);
          if (w <= s.cap) pool.emplace_back(x, w);
        }
      std::sort(pool.begin(), pool.end());
      std::vector<Value> out;
      std::vector<Value> cur;
      sorted_multisets(pool, 0, s.cap, cur, out);
      return out;
    }
    case SK::Filter: {
      Space inner = tighten_rec(s.kids[0], s.m);
      std::vector<Value> out;
      for (Value& x : enumerate_level(inner, d))
        if (phi(inner, x) <= s.m) out.push_back(std::move(x));
      return out;
    }
  }
  throw std::runtime_error("enumerate_level: bad space");
}

Value at_depth(const Space& s, const Value& v, int d, int depth, const DepthFn& fn) {
  if (depth == 0) return fn(s, v, d);
  check_kind(s, v);
  switch (s.kind) {
    case SK::Filter:
      return at_depth(s.kids[0], v, d, depth, fn);
    case SK::Wedge:
      return v_side(v.side, at_depth(s.kids[v.side], v.kids[0], d, depth, fn));
    case SK::Prod: {
      std::vector<Value> comps;
      for (std::size_t t = 0; t < s.kids.size(); ++t)
        comps.push_back(at_depth(s.kids[t], v.kids[t], d, depth, fn));
      return v_tuple(std::move(comps));
    }
    case SK::Sp: {
      std::vector<Value> elems;
      for (const Value& k : v.kids) elems.push_back(at_depth(s.kids[0], k, d, depth, fn));
      return v_sppt(std::move(elems));
    }
    case SK::C: {
      std::vector<Value> coords;
      for (const Value& k : v.kids) coords.push_back(at_depth(s.kids[0], k, d, depth - 1, fn));
      return v_cpt(v.word, std::move(coords));
    }
    case SK::Base:
      throw std::runtime_error("at_depth: descended past the base");
  }
  throw std::runtime_error("at_depth: bad space");
}

Value mu_point(const Value& v) {
  need(v.kind == VK::CPt, "mu: operad point expected");
  std::vector<EWord> inner_words;
  std::vector<Value> coords;
  for (const Value& k : v.kids) {
    need(k.kind == VK::CPt, "mu: nested operad point expected");
    inner_words.push_back(k.word);
    for (const Value& c : k.kids) coords.push_back(c);
  }
  return v_cpt(operad_compose(v.word, inner_words), std::move(coords));
}

Value mu_sp_point(const Value& v) {
  need(v.kind == VK::CPt, "mu_sp: operad point expected");
  std::vector<Value> elems;
  for (const Value& k : v.kids) {
    need(k.kind == VK::SpPt, "mu_sp: multiset coordinate expected");
    for (const Value& c : k.kids) elems.push_back(c);
  }
  return v_sppt(std::move(elems));
}

Value sp_mu_point(const Value& v) {
  need(v.kind == VK::SpPt, "sp_mu: multiset point expected");
  std::vector<Value> elems;
  for (const Value& k : v.kids) {
    need(k.kind == VK::SpPt, "sp_mu: multiset element expected");
    for (const Value& c : k.kids) elems.push_back(c);
  }
  return v_sppt(std::move(elems));
}

Value eta_point(const Value& v, int d) { return v_cpt(eword_identity(1, d), {v}); }

Value eps_point(const Value& v) {
  need(v.kind == VK::CPt, "eps: operad point expected");
  return v_sppt(v.kids);
}

Value mu_at(const Space& s, const Value& v, int d, int depth) {
  return at_depth(s, v, d, depth,
                  [](const Space&, const Value& x, int) { return mu_point(x); });
}

Value mu_sp_at(const Space& s, const Value& v, int d, int depth) {
  return at_depth(s, v, d, depth,
                  [](const Space&, const Value& x, int) { return mu_sp_point(x); });
}

Value eta_at(const Space& s, const Value& v, int d, int depth) {
  return at_depth(s, v, d, depth,
                  [](const Space&, const Value& x, int dd) { return eta_point(x, dd); });
}

Value eps_at(const Space& s, const Value& v, int d, int depth) {
  return at_depth(s, v, d, depth,
                  [](const Space&, const Value& x, int) { return eps_point(x); });
}

SimplexRef Materialized::ref_of(const Value& v, int d) const {
  Value cur = canon(space, v);
  int dd = d;
  Mono total;
  total.resize(d + 1);
  for (int t = 0; t <= d; ++t) total[t] = t;
  while (dd >= 1) {
    int found = -1;
    for (int i = 0; i < dd && found < 0; ++i) {
      Value f = face(space, cur, i);
      if (degen(space, f, i) == cur) found = i;
    }
    if (found < 0) break;
    cur = face(space, cur, found);
    --dd;
    total = compose_mono(word_to_mono(DegeneracyWord{{found}}, dd), total);
  }
  auto it = gen_of[dd].find(cur);
  if (it == gen_of[dd].end()) throw std::runtime_error("ref_of: value is not in the space");
  return {mono_to_word(total), it->second};
}

Value Materialized::value_of(const SimplexRef& r) const {
  Value v = gen_value[r.gen];
  int d = fs.s.gens[r.gen].dim;
  for (auto it = r.word.idx.rbegin(); it != r.word.idx.rend(); ++it) {
    v = degen(space, v, *it);
    ++d;
  }
  return v;
}

Materialized materialize(const Space& s, int max_dim, bool parallel,
                         long long level_cap) {
  Materialized M;
  M.space = s;
  M.fs.s.truncation_dim = max_dim;
  M.gen_of.resize(max_dim + 1);
  for (int d = 0; d <= max_dim; ++d) {
    std::vector<Value> level = enumerate_level(s, d);
    if (level_cap >= 0 && (long long)level.size() > level_cap)
      throw std::length_error("materialize: level " + std::to_string(d) +
                              " has " + std::to_string(level.size()) +
                              " points, cap " + std::to_string(level_cap));
    std::vector<char> nondeg(level.size(), 1);
    par::for_index(level.size(), parallel, [&](std::size_t t) {
      for (int i = 0; i < d; ++i) {
        Value f = face(s, level[t], i);
        if (degen(s, f, i) == level[t]) {
          nondeg[t] = 0;
          return;
        }
      }
    });
    for (std::size_t t = 0; t < level.size(); ++t)
      if (nondeg[t]) {
        int id = M.fs.s.add_gen(d, value_str(level[t]));
        M.gen_value.push_back(level[t]);
        M.gen_of[d][level[t]] = id;
        M.fs.phi.push_back(phi(s, level[t]));
      }
  }
  M.fs.s.basepoint = M.gen_of[0].at(canon(s, bp_at(s, 0)));
  int n = static_cast<int>(M.fs.s.gens.size());
  std::vector<std::vector<SimplexRef>> faces(n);
  par::for_index(static_cast<std::size_t>(n), parallel, [&](std::size_t g) {
    int d = M.fs.s.gens[g].dim;
    if (d == 0) return;
    for (int i = 0; i <= d; ++i)
      faces[g].push_back(M.ref_of(face(s, M.gen_value[g], i), d - 1));
  });
  for (int g = 0; g < n; ++g)
    if (M.fs.s.gens[g].dim >= 1) M.fs.s.set_faces(g, std::move(faces[g]));
  return M;
}

}  // namespace rankfilt
