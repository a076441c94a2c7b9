#include "rankfilt/gamma.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "rankfilt/eword.hpp"

namespace rankfilt {

// --- parsing -------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* where) {
    if (!eat(c))
      throw std::invalid_argument(std::string("parse: expected '") + c +
                                  "' in " + where);
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }
  int number(const char* where) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
    if (pos == start)
      throw std::invalid_argument(std::string("parse: expected number in ") +
                                  where);
    return std::stoi(text.substr(start, pos - start));
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
};

FunctorAtom parse_atom(Cursor& c) {
  std::string name = c.ident();
  if (name == "Id") return {FunctorAtom::Id, -1};
  if (name == "C") return {FunctorAtom::C, -1};
  if (name == "Sp") {
    if (c.eat('(')) {
      int m = c.number("Sp(m)");
      c.expect(')', "Sp(m)");
      return {FunctorAtom::SpM, m};
    }
    return {FunctorAtom::SpInf, -1};
  }
  if (name == "filt") {
    c.expect('(', "filt(m)");
    int m = c.number("filt(m)");
    c.expect(')', "filt(m)");
    return {FunctorAtom::FilterM, m};
  }
  throw std::invalid_argument("parse: unknown functor atom '" + name + "'");
}

}  // namespace

GammaExpr gamma_parse(const std::string& text) {
  Cursor c{text};
  GammaExpr e;
  e.atoms.push_back(parse_atom(c));
  while (c.eat('.')) e.atoms.push_back(parse_atom(c));
  if (!c.done())
    throw std::invalid_argument("parse: trailing input in expression '" +
                                text + "'");
  return e;
}

std::string GammaExpr::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) os << " . ";
    switch (atoms[i].kind) {
      case FunctorAtom::Id: os << "Id"; break;
      case FunctorAtom::SpInf: os << "Sp"; break;
      case FunctorAtom::SpM: os << "Sp(" << atoms[i].m << ")"; break;
      case FunctorAtom::C: os << "C"; break;
      case FunctorAtom::FilterM: os << "filt(" << atoms[i].m << ")"; break;
    }
  }
  return os.str();
}

BaseSpace base_of(std::shared_ptr<const FilteredSSet> fs) {
  BaseSpace b;
  b.fs = std::move(fs);
  return b;
}

BaseSpace base_wedge(std::shared_ptr<const FilteredSSet> a,
                     std::shared_ptr<const FilteredSSet> b) {
  auto ix = std::make_shared<WedgeIndex>();
  auto fs = std::make_shared<FilteredSSet>(wedge_filtered(*a, *b, ix.get()));
  BaseSpace out;
  out.fs = fs;
  out.left = std::move(a);
  out.right = std::move(b);
  out.widx = ix;
  return out;
}

namespace {

BaseSpace parse_space(Cursor& c, const EvalBounds& b);

int model_truncation(const EvalBounds& b) { return std::max(b.max_dim, 2); }

BaseSpace parse_space_term(Cursor& c, const EvalBounds& b) {
  c.skip_ws();
  if (c.eat('(')) {
    BaseSpace inner = parse_space(c, b);
    c.expect(')', "( space )");
    return inner;
  }
  std::string name = c.ident();
  int trunc = model_truncation(b);
  if (name == "S0" || name == "S1" || name == "S2" || name == "point")
    return base_of(std::make_shared<FilteredSSet>(filtered_model(name, trunc)));
  if (name == "fin") {
    c.expect('(', "fin(k)");
    int k = c.number("fin(k)");
    c.expect(')', "fin(k)");
    return base_of(std::make_shared<FilteredSSet>(filtered_fin(k, trunc)));
  }
  if (name == "Sp") {
    c.expect('(', "Sp(m, A)");
    int m = c.number("Sp(m, A)");
    c.expect(',', "Sp(m, A)");
    BaseSpace arg = parse_space(c, b);
    c.expect(')', "Sp(m, A)");
    if (m > b.max_filt)
      throw BoundExhausted("Sp(" + std::to_string(m) +
                           ", -) exceeds max_filt " + std::to_string(b.max_filt));
    Space tower =
        tighten(space_filter(space_sp(space_base(arg.fs.get()), m), m));
    Materialized mat;
    try {
      mat = materialize(tower, trunc, true, b.simplex_cap);
    } catch (const std::length_error& ex) {
      throw BoundExhausted(std::string("Sp(m, A): ") + ex.what());
    }
    return base_of(std::make_shared<FilteredSSet>(std::move(mat.fs)));
  }
  throw std::invalid_argument("parse: unknown space '" + name + "'");
}

BaseSpace parse_space(Cursor& c, const EvalBounds& b) {
  BaseSpace acc = parse_space_term(c, b);
  for (;;) {
    Cursor save = c;
    c.skip_ws();
    std::size_t at = c.pos;
    std::string word = c.ident();
    if (word == "v") {
      BaseSpace rhs = parse_space_term(c, b);
      acc = base_wedge(acc.fs, rhs.fs);
    } else {
      c.pos = at;
      (void)save;
      return acc;
    }
  }
}

}  // namespace

BaseSpace base_parse(const std::string& text, const EvalBounds& b) {
  Cursor c{text};
  BaseSpace out = parse_space(c, b);
  if (!c.done())
    throw std::invalid_argument("parse: trailing input in space '" + text +
                                "'");
  return out;
}

// --- evaluation ------------------------------------------------------------

Space apply_expr(const GammaExpr& e, const Space& base, const EvalBounds& b) {
  Space acc = base;
  for (auto it = e.atoms.rbegin(); it != e.atoms.rend(); ++it) {
    switch (it->kind) {
      case FunctorAtom::Id:
        break;
      case FunctorAtom::SpInf:
        acc = space_sp(std::move(acc), b.outer_cap);
        break;
      case FunctorAtom::SpM:
        if (it->m > b.max_filt)
          throw BoundExhausted("Sp(" + std::to_string(it->m) +
                               ") exceeds max_filt " +
                               std::to_string(b.max_filt));
        acc = space_filter(space_sp(std::move(acc), it->m), it->m);
        break;
      case FunctorAtom::C:
        acc = space_c(std::move(acc), b.outer_cap);
        break;
      case FunctorAtom::FilterM:
        if (it->m > b.max_filt)
          throw BoundExhausted("filt(" + std::to_string(it->m) +
                               ") exceeds max_filt " +
                               std::to_string(b.max_filt));
        acc = space_filter(std::move(acc), it->m);
        break;
    }
  }
  return tighten(acc);
}

std::vector<Value> enumerate_guarded(const Space& s, int d,
                                     const EvalBounds& b) {
  if (d > b.max_dim)
    throw BoundExhausted("level " + std::to_string(d) + " exceeds max_dim " +
                         std::to_string(b.max_dim));
  std::vector<Value> out = enumerate_level(s, d);
  if ((long long)out.size() > b.simplex_cap)
    throw BoundExhausted("level " + std::to_string(d) + " has " +
                         std::to_string(out.size()) + " points, cap " +
                         std::to_string(b.simplex_cap));
  return out;
}

EvalResult eval_expr(const GammaExpr& e, const BaseSpace& base,
                     const EvalBounds& b, bool parallel) {
  EvalResult out;
  out.base = base;
  out.space = apply_expr(e, space_base(base.fs.get()), b);
  try {
    out.mat = materialize(out.space, b.max_dim, parallel, b.simplex_cap);
  } catch (const std::length_error& ex) {
    throw BoundExhausted(std::string("eval: ") + ex.what());
  }
  return out;
}

// --- maps of towers ---------------------------------------------------------

SSetMap induced_sset_map(const Materialized& src, const Materialized& dst,
                         const std::function<Value(const Value&, int)>& fn) {
  SSetMap f{&src.fs.s, &dst.fs.s, {}};
  f.gen_image.resize(src.fs.s.gens.size());
  for (std::size_t g = 0; g < src.fs.s.gens.size(); ++g) {
    int d = src.fs.s.gens[g].dim;
    f.gen_image[g] = dst.ref_of(fn(src.gen_value[g], d), d);
  }
  return f;
}

Value transport(const Space& src, const Space& dst, const SSetMap& f,
                const Value& v, int d) {
  switch (src.kind) {
    case SK::Base:
      return v_base(f.apply(v.ref));
    case SK::Filter:
      return transport(src.kids[0], dst.kids[0], f, v, d);
    case SK::Prod: {
      std::vector<Value> kids;
      for (std::size_t i = 0; i < v.kids.size(); ++i)
        kids.push_back(transport(src.kids[i], dst.kids[i], f, v.kids[i], d));
      return v_tuple(std::move(kids));
    }
    case SK::Wedge:
      return v_side(v.side,
                    transport(src.kids[v.side], dst.kids[v.side], f,
                              v.kids[0], d));
    case SK::C: {
      std::vector<Value> kids;
      for (const Value& k : v.kids)
        kids.push_back(transport(src.kids[0], dst.kids[0], f, k, d));
      return v_cpt(v.word, std::move(kids));
    }
    case SK::Sp: {
      std::vector<Value> kids;
      for (const Value& k : v.kids)
        kids.push_back(transport(src.kids[0], dst.kids[0], f, k, d));
      return v_sppt(std::move(kids));
    }
  }
  throw std::logic_error("transport: unreachable");
}

Value eps_to_sp(const Space& s, const Value& v, int d) {
  switch (s.kind) {
    case SK::Base:
      if (s.base->s.is_bp(v.ref)) return v_sppt({});
      return v_sppt({v});
    case SK::Filter:
      return eps_to_sp(s.kids[0], v, d);
    case SK::C:
    case SK::Sp: {
      std::vector<Value> acc;
      for (const Value& k : v.kids) {
        Value flat = eps_to_sp(s.kids[0], k, d);
        for (const Value& e : flat.kids) acc.push_back(e);
      }
      std::sort(acc.begin(), acc.end());
      return v_sppt(std::move(acc));
    }
    default:
      throw std::invalid_argument(
          "eps_to_sp: tower has a product or wedge above the base");
  }
}

Space eps_target(const Space& s) {
  const Space* cur = &s;
  int cap = -1;
  while (cur->kind != SK::Base) {
    if (cur->kind == SK::C || cur->kind == SK::Sp) {
      if (cap < 0) cap = cur->cap;
    } else if (cur->kind == SK::Filter) {
      if (cap < 0) cap = cur->m;
    } else {
      throw std::invalid_argument("eps_target: not a composition tower");
    }
    cur = &cur->kids[0];
  }
  if (cap < 0) throw std::invalid_argument("eps_target: no functor layer");
  return space_sp(*cur, cap);
}

// --- pi0 as a monoid ---------------------------------------------------------

namespace {

// per root node of kind C or Sp: the pi0 of its inner space
struct InnerPi0 {
  Materialized mat;
  Pi0 comps;
  std::vector<int> pos_of_gen;   // dim-0 generator id -> position in by_dim[0]
  std::vector<int> gen_class;    // non-bp class -> generator index offset base
  std::vector<int> min_phi;      // per non-bp class
  int offset = 0;                // first generator index of this node
  int nonbp = 0;
};

struct FreeCtx {
  std::vector<InnerPi0> inners;
  bool applicable = true;
};

// number of multisets over weights w_1..w_g with total <= cap
long long count_multisets(const std::vector<int>& w, int cap) {
  std::vector<long long> dp(cap + 1, 0);
  dp[0] = 1;
  for (int g = 0; g < (int)w.size(); ++g)
    for (int t = w[g]; t <= cap; ++t) dp[t] += dp[t - w[g]];
  long long total = 0;
  for (int t = 0; t <= cap; ++t) total += dp[t];
  return total;
}

void build_ctx(const Space& s, FreeCtx& ctx) {
  if (s.kind == SK::Prod) {
    for (const Space& k : s.kids) build_ctx(k, ctx);
    return;
  }
  if (s.kind != SK::C && s.kind != SK::Sp) {
    ctx.applicable = false;
    return;
  }
  InnerPi0 node;
  node.mat = materialize(s.kids[0], 1);
  node.comps = pi0(node.mat.fs.s);
  node.pos_of_gen.assign(node.mat.fs.s.gens.size(), -1);
  const auto& verts = node.mat.fs.s.by_dim[0];
  for (int p = 0; p < (int)verts.size(); ++p) node.pos_of_gen[verts[p]] = p;
  // generator indices for non-basepoint classes, in class order
  std::vector<int> gen_index(node.comps.classes, -1);
  node.min_phi.assign(node.comps.classes, -1);
  int next = 0;
  for (int c = 0; c < node.comps.classes; ++c)
    if (c != node.comps.bp_class) gen_index[c] = next++;
  node.nonbp = next;
  for (int p = 0; p < (int)verts.size(); ++p) {
    int c = node.comps.class_of_vertex[p];
    int ph = node.mat.fs.phi[verts[p]];
    if (node.min_phi[c] < 0 || ph < node.min_phi[c]) node.min_phi[c] = ph;
  }
  node.gen_class = std::move(gen_index);
  ctx.inners.push_back(std::move(node));
}

// accumulate the generator vector of a vertex value; `which` walks the
// product factors in the same order as build_ctx
void vec_of_value(const Space& s, const Value& v, const FreeCtx& ctx,
                  std::size_t& which, std::vector<int>& out) {
  if (s.kind == SK::Prod) {
    for (std::size_t i = 0; i < s.kids.size(); ++i)
      vec_of_value(s.kids[i], v.kids[i], ctx, which, out);
    return;
  }
  const InnerPi0& node = ctx.inners[which++];
  for (const Value& k : v.kids) {
    int gen = node.mat.gen_of[0].at(k);
    int cls = node.comps.class_of_vertex[node.pos_of_gen[gen]];
    out[node.offset + node.gen_class[cls]] += 1;
  }
}

}  // namespace

FPCommMonoid Pi0Free::monoid() const { return FPCommMonoid{gens, {}}; }

Pi0Free pi0_free(const EvalResult& ev) {
  Pi0Free out;
  out.classes = pi0(ev.mat.fs.s);

  FreeCtx ctx;
  build_ctx(ev.space, ctx);
  if (!ctx.applicable || ctx.inners.empty()) return out;
  out.applicable = true;
  int total = 0;
  for (InnerPi0& node : ctx.inners) {
    node.offset = total;
    total += node.nonbp;
  }
  out.gens = total;

  const auto& verts = ev.mat.fs.s.by_dim[0];
  std::vector<std::vector<int>> vec_of_vertex(verts.size());
  for (int p = 0; p < (int)verts.size(); ++p) {
    std::vector<int> vec(total, 0);
    std::size_t which = 0;
    vec_of_value(ev.space, ev.mat.gen_value[verts[p]], ctx, which, vec);
    vec_of_vertex[p] = std::move(vec);
  }

  // the vector must be constant along every edge
  std::vector<int> pos_of_gen(ev.mat.fs.s.gens.size(), -1);
  for (int p = 0; p < (int)verts.size(); ++p) pos_of_gen[verts[p]] = p;
  out.edges_consistent = true;
  if ((int)ev.mat.fs.s.by_dim.size() > 1)
    for (int e : ev.mat.fs.s.by_dim[1]) {
      SimplexRef ref{{}, e};
      auto cls_vec = [&](const SimplexRef& r) -> const std::vector<int>& {
        return vec_of_vertex[pos_of_gen[r.gen]];
      };
      if (cls_vec(ev.mat.fs.s.face(ref, 0)) != cls_vec(ev.mat.fs.s.face(ref, 1)))
        out.edges_consistent = false;
    }

  out.vec_of_class.assign(out.classes.classes, {});
  bool consistent = out.edges_consistent;
  for (int p = 0; p < (int)verts.size(); ++p) {
    int c = out.classes.class_of_vertex[p];
    if (out.vec_of_class[c].empty())
      out.vec_of_class[c] = vec_of_vertex[p];
    else if (out.vec_of_class[c] != vec_of_vertex[p])
      consistent = false;
  }
  out.edges_consistent = consistent;

  // budget: product over the root nodes of the multiset counts at their caps
  {
    long long budget = 1;
    std::size_t which = 0;
    std::function<void(const Space&)> walk = [&](const Space& s) {
      if (s.kind == SK::Prod) {
        for (const Space& k : s.kids) walk(k);
        return;
      }
      const InnerPi0& node = ctx.inners[which++];
      std::vector<int> weights;
      for (int c = 0; c < node.comps.classes; ++c)
        if (c != node.comps.bp_class)
          weights.push_back(std::max(1, node.min_phi[c]));
      budget *= count_multisets(weights, s.cap);
    };
    walk(ev.space);
    out.expected_classes = budget;
  }

  std::vector<std::vector<int>> sorted = out.vec_of_class;
  std::sort(sorted.begin(), sorted.end());
  bool distinct =
      std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  out.free_verified = out.edges_consistent && distinct &&
                      (long long)out.classes.classes == out.expected_classes;
  return out;
}

Pi0HomResult pi0_hom(const EvalResult& src_ev, const Pi0Free& src,
                     const SSetMap& f, const EvalResult& dst_ev,
                     const Pi0Free& dst) {
  if (!src.applicable || !dst.applicable)
    throw std::invalid_argument("pi0_hom: sides not free-certified");
  Pi0HomResult out;
  out.src = &src;
  out.dst = &dst;
  out.matrix = IntMat(dst.gens, src.gens);

  const auto& verts = src_ev.mat.fs.s.by_dim[0];
  std::vector<int> dst_pos(dst_ev.mat.fs.s.gens.size(), -1);
  const auto& dverts = dst_ev.mat.fs.s.by_dim[0];
  for (int p = 0; p < (int)dverts.size(); ++p) dst_pos[dverts[p]] = p;

  auto image_vec = [&](int p) {
    SimplexRef img = f.apply(SimplexRef{{}, verts[p]});
    int c = dst.classes.class_of_vertex[dst_pos[img.gen]];
    return dst.vec_of_class[c];
  };

  // columns from the unit-vector classes
  std::vector<int> seen(src.gens, 0);
  for (int p = 0; p < (int)verts.size(); ++p) {
    int c = src.classes.class_of_vertex[p];
    const std::vector<int>& v = src.vec_of_class[c];
    int weight = 0, where = -1;
    for (int g = 0; g < src.gens; ++g) {
      weight += v[g];
      if (v[g] == 1) where = g;
    }
    if (weight == 1 && !seen[where]) {
      seen[where] = 1;
      std::vector<int> iv = image_vec(p);
      for (int g = 0; g < dst.gens; ++g) out.matrix.at(g, where) = iv[g];
    }
  }
  for (int g = 0; g < src.gens; ++g)
    if (!seen[g])
      throw std::invalid_argument("pi0_hom: generator class not enumerated");

  // every vertex must map additively
  out.additive = true;
  for (int p = 0; p < (int)verts.size(); ++p) {
    int c = src.classes.class_of_vertex[p];
    const std::vector<int>& v = src.vec_of_class[c];
    std::vector<int> expect(dst.gens, 0);
    for (int g = 0; g < src.gens; ++g)
      for (int h = 0; h < dst.gens; ++h)
        expect[h] += (int)out.matrix.at(h, g) * v[g];
    if (image_vec(p) != expect) out.additive = false;
  }
  return out;
}

MonoidHom Pi0HomResult::hom() const {
  return MonoidHom{src->monoid(), dst->monoid(), matrix};
}

// --- linearization -----------------------------------------------------------

Linearization linearization_lambda(const GammaExpr& e, const BaseSpace& x,
                                   const BaseSpace& y, const EvalBounds& b,
                                   bool parallel) {
  Linearization out;
  BaseSpace w = base_wedge(x.fs, y.fs);
  out.on_wedge = std::make_shared<EvalResult>(eval_expr(e, w, b, parallel));
  out.on_x = std::make_shared<EvalResult>(eval_expr(e, x, b, parallel));
  out.on_y = std::make_shared<EvalResult>(eval_expr(e, y, b, parallel));

  // collapse maps of the base wedge
  const FilteredSSet& wfs = *w.fs;
  auto collapse = [&](int side, const FilteredSSet& tgt) {
    SSetMap c{&wfs.s, &tgt.s, {}};
    for (std::size_t g = 0; g < wfs.s.gens.size(); ++g) {
      auto [sd, orig] = w.widx->from[g];
      if (sd == side)
        c.gen_image.push_back(SimplexRef{{}, orig});
      else
        c.gen_image.push_back(tgt.s.bp_at(wfs.s.gens[g].dim));
    }
    return c;
  };
  SSetMap cx = collapse(0, *x.fs);
  SSetMap cy = collapse(1, *y.fs);

  out.to_x = induced_sset_map(
      out.on_wedge->mat, out.on_x->mat, [&](const Value& v, int d) {
        return transport(out.on_wedge->space, out.on_x->space, cx, v, d);
      });
  out.to_y = induced_sset_map(
      out.on_wedge->mat, out.on_y->mat, [&](const Value& v, int d) {
        return transport(out.on_wedge->space, out.on_y->space, cy, v, d);
      });

  out.pix = std::make_shared<ProductIndex>();
  out.product = std::make_shared<FilteredSSet>(
      product_filtered(out.on_x->mat.fs, out.on_y->mat.fs, out.pix.get()));
  out.stage_gen_map.clear();
  out.staged_product = std::make_shared<FilteredSSet>(
      filtration_stage(*out.product, b.outer_cap, &out.stage_gen_map));

  out.assembled.src = &out.on_wedge->mat.fs.s;
  out.assembled.dst = &out.staged_product->s;
  for (std::size_t g = 0; g < out.on_wedge->mat.fs.s.gens.size(); ++g) {
    SimplexRef pref =
        out.pix->ref_of_tuple({out.to_x.gen_image[g], out.to_y.gen_image[g]});
    int staged = out.stage_gen_map[pref.gen];
    if (staged < 0)
      throw std::logic_error("linearization: image escapes the stage");
    out.assembled.gen_image.push_back(SimplexRef{pref.word, staged});
  }
  return out;
}

Specialness specialness_report(const GammaExpr& e, const BaseSpace& x,
                               const BaseSpace& y, const EvalBounds& b,
                               bool parallel) {
  Specialness out;
  out.lin = linearization_lambda(e, x, y, b, parallel);

  out.pi0_src = pi0_free(*out.lin.on_wedge);
  // pi0 certificate of the full (unstaged) product tower
  EvalResult prod_ev;
  prod_ev.space =
      tighten(space_prod({out.lin.on_x->space, out.lin.on_y->space}));
  try {
    prod_ev.mat = materialize(prod_ev.space, b.max_dim, parallel, b.simplex_cap);
  } catch (const std::length_error& ex) {
    throw BoundExhausted(std::string("specialness: ") + ex.what());
  }
  out.pi0_dst = pi0_free(prod_ev);

  if (out.pi0_src.applicable && out.pi0_dst.applicable &&
      out.pi0_src.free_verified && out.pi0_dst.free_verified) {
    SSetMap to_tower{&out.lin.on_wedge->mat.fs.s, &prod_ev.mat.fs.s, {}};
    for (std::size_t g = 0; g < out.lin.on_wedge->mat.fs.s.gens.size(); ++g) {
      int d = out.lin.on_wedge->mat.fs.s.gens[g].dim;
      Value tv =
          v_tuple({out.lin.on_x->mat.value_of(out.lin.to_x.gen_image[g]),
                   out.lin.on_y->mat.value_of(out.lin.to_y.gen_image[g])});
      to_tower.gen_image.push_back(prod_ev.mat.ref_of(tv, d));
    }
    Pi0HomResult hom =
        pi0_hom(*out.lin.on_wedge, out.pi0_src, to_tower, prod_ev, out.pi0_dst);
    out.pi0_additive = hom.additive;
    out.pi0_matrix = hom.matrix;
    out.pi0_gc = gc_compare(hom.hom());
  }

  out.strict_iso =
      is_simplicial(out.lin.assembled) && is_isomorphism(out.lin.assembled);
  out.homology = connectivity_compare(out.lin.assembled, b.max_dim - 1, parallel);
  bool pi0_ok = out.pi0_gc.has_value() ? out.pi0_gc->iso() : false;
  out.special_at_checked =
      pi0_ok && out.homology.connectivity == b.max_dim - 1;
  return out;
}

// --- assembly ----------------------------------------------------------------

Value assembly_alpha(const Space& on_wedge, const std::vector<const Space*>& arms,
                     const std::vector<const SSetMap*>& incs, const EWord& e,
                     const std::vector<Value>& points, int d) {
  if (arms.size() != points.size() || arms.size() != incs.size())
    throw std::invalid_argument("assembly_alpha: arm count mismatch");
  if (e.arity != (int)arms.size() || e.dim() != d)
    throw std::invalid_argument("assembly_alpha: word must have arity k, dim d");
  std::vector<Value> included(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i)
    included[i] =
        canon(on_wedge, transport(*arms[i], on_wedge, *incs[i], points[i], d));
  Value paired = v_cpt(e, included);
  const Space* root = &on_wedge;
  while (root->kind == SK::Filter) root = &root->kids[0];
  if (root->kind == SK::C) return canon(on_wedge, mu_point(paired));
  if (root->kind == SK::Sp) return canon(on_wedge, mu_sp_point(paired));
  throw std::invalid_argument("assembly_alpha: tower has no built-in action");
}

// --- module action -------------------------------------------------------------

namespace {

// the built-in action of the free construction on a tower rooted in C or Sp
Value act(const Space& s, const Value& v) {
  const Space* root = &s;
  while (root->kind == SK::Filter) root = &root->kids[0];
  if (root->kind == SK::C) return mu_point(v);
  if (root->kind == SK::Sp) return mu_sp_point(v);
  throw std::invalid_argument("module action: tower has no built-in action");
}

}  // namespace

ModuleActionReport check_module_action(const GammaExpr& f,
                                       const BaseSpace& base,
                                       const EvalBounds& b) {
  ModuleActionReport rep;
  rep.unit = rep.assoc = rep.aug_square = rep.filtration = rep.closed = true;
  Space fx = apply_expr(f, space_base(base.fs.get()), b);
  Space cfx = tighten(space_c(fx, b.outer_cap));
  Space ccfx = tighten(space_c(cfx, b.outer_cap));
  Space spx = eps_target(fx);

  for (int d = 0; d <= b.max_dim; ++d) {
    // unit: action(eta(v)) == v
    for (const Value& v : enumerate_guarded(fx, d, b)) {
      ++rep.points;
      Value u = canon(fx, act(fx, eta_point(v, d)));
      if (u != v) rep.unit = false;
    }
    // action is phi-nonincreasing and augmentation-compatible on C(FX)
    for (const Value& v : enumerate_guarded(cfx, d, b)) {
      ++rep.points;
      Value a = canon(fx, act(fx, v));
      if (phi(fx, a) > phi(cfx, v)) rep.filtration = false;
      if (!space_contains(fx, a, d)) rep.closed = false;
      // eps of the action vs Sp-multiplication of coordinatewise eps
      Value lhs = canon(spx, eps_to_sp(fx, a, d));
      std::vector<Value> sps;
      for (const Value& k : v.kids) sps.push_back(eps_to_sp(fx, k, d));
      Value rhs = canon(spx, sp_mu_point(v_sppt(std::move(sps))));
      if (lhs != rhs) rep.aug_square = false;
    }
    // associativity on CC(FX)
    for (const Value& v : enumerate_guarded(ccfx, d, b)) {
      ++rep.points;
      Value via_mu = canon(fx, act(fx, canon(cfx, mu_point(v))));
      std::vector<Value> acted;
      for (const Value& k : v.kids) acted.push_back(canon(fx, act(fx, k)));
      Value via_cact = canon(fx, act(fx, v_cpt(v.word, std::move(acted))));
      if (via_mu != via_cact) rep.assoc = false;
    }
  }
  return rep;
}

// --- pointed finite sets ----------------------------------------------------------

SSetMap pointed_map(const std::vector<int>& img, const FilteredSSet& src,
                    const FilteredSSet& dst) {
  SSetMap f{&src.s, &dst.s, {}};
  // discrete models: generator 0 is the basepoint, 1..n the elements
  if (src.s.gens.size() != img.size() + 1)
    throw std::invalid_argument("pointed_map: image list has wrong length");
  f.gen_image.push_back(dst.s.bp_at(0));
  for (int v : img) {
    if (v < 0 || v >= (int)dst.s.gens.size())
      throw std::invalid_argument("pointed_map: image out of range");
    f.gen_image.push_back(SimplexRef{{}, v == 0 ? dst.s.basepoint : v});
  }
  return f;
}

}  // namespace rankfilt
