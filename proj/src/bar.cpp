#include "rankfilt/bar.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rankfilt/parallel.hpp"

namespace rankfilt {

std::string to_string(BarVariant v) {
  switch (v) {
    case BarVariant::Unfiltered: return "unfiltered";
    case BarVariant::Unstable: return "unstable";
    case BarVariant::Stable: return "stable";
  }
  return "?";
}

struct BarMemo {
  std::mutex mu;
  std::map<std::pair<int, int>, std::vector<Value>> cells;
};

BarObject bar_make(const GammaExpr& F, const BaseSpace& X, int m,
                   BarVariant variant, int K, const EvalBounds& b) {
  if (K < 0) throw std::invalid_argument("bar_make: K < 0");
  if (m < 0) throw std::invalid_argument("bar_make: m < 0");
  if (variant != BarVariant::Unfiltered && m > b.max_filt)
    throw BoundExhausted("bar_make: m exceeds max_filt");

  BarObject out;
  out.F = F;
  out.X = X;
  out.m = m;
  out.variant = variant;
  out.K = K;
  out.bounds = b;
  out.memo = std::make_shared<BarMemo>();
  out.fx = apply_expr(F, space_base(X.fs.get()), b);
  if (out.fx.kind == SK::C)
    out.f_c_rooted = true;
  else if (out.fx.kind == SK::Sp)
    out.f_c_rooted = false;
  else
    throw std::invalid_argument(
        "bar_make: F carries no module action (root must be C or Sp)");

  // bare layers use a cap wide enough for both the filtration and plain use;
  // tighten pulls everything under a filter down to its level
  int cap = std::max(b.outer_cap, m);
  for (int k = 0; k <= K; ++k) {
    Space lvl;
    switch (variant) {
      case BarVariant::Unfiltered: {
        Space nest = out.fx;
        for (int j = 0; j <= k; ++j) nest = space_c(nest, b.outer_cap);
        lvl = tighten(nest);
        break;
      }
      case BarVariant::Unstable: {
        Space nest = out.fx;
        for (int j = 0; j <= k; ++j) nest = space_c(nest, cap);
        lvl = tighten(space_filter(nest, m));
        break;
      }
      case BarVariant::Stable: {
        Space nest = out.fx;
        for (int j = 0; j < k; ++j) nest = space_c(nest, cap);
        lvl = tighten(
            space_c(space_filter(nest, m), out.stable_outer_cap(k)));
        break;
      }
    }
    out.levels.push_back(std::move(lvl));
  }
  return out;
}

const std::vector<Value>& bar_cells(const BarObject& b, int k, int d) {
  if (k < 0 || k > b.K) throw std::out_of_range("bar_cells: level");
  auto key = std::make_pair(k, d);
  {
    std::lock_guard<std::mutex> lock(b.memo->mu);
    auto it = b.memo->cells.find(key);
    if (it != b.memo->cells.end()) return it->second;
  }
  std::vector<Value> pts = enumerate_guarded(b.levels[k], d, b.bounds);
  std::lock_guard<std::mutex> lock(b.memo->mu);
  return b.memo->cells.emplace(key, std::move(pts)).first->second;
}

Value bar_face(const BarObject& b, int k, int i, const Value& p, int d) {
  if (k < 1 || k > b.K) throw std::out_of_range("bar_face: level");
  if (i < 0 || i > k) throw std::out_of_range("bar_face: index");
  const Space& src = b.levels[k];
  Value raw = (i < k || b.f_c_rooted) ? mu_at(src, p, d, i)
                                      : mu_sp_at(src, p, d, i);
  return canon(b.levels[k - 1], raw);
}

Value bar_degeneracy(const BarObject& b, int k, int i, const Value& p, int d) {
  if (k < 0 || k >= b.K) throw std::out_of_range("bar_degeneracy: level");
  if (i < 0 || i > k) throw std::out_of_range("bar_degeneracy: index");
  return canon(b.levels[k + 1], eta_at(b.levels[k], p, d, i + 1));
}

Value bar_extra_degeneracy(const BarObject& b, int k, const Value& p, int d) {
  if (b.variant == BarVariant::Stable)
    throw std::logic_error(
        "bar_extra_degeneracy: stable variant has no extra degeneracy");
  if (k < 0 || k >= b.K) throw std::out_of_range("bar_extra_degeneracy: level");
  return canon(b.levels[k + 1], eta_at(b.levels[k], p, d, 0));
}

Space bar_aug_target(const BarObject& b) {
  if (b.variant == BarVariant::Stable)
    throw std::logic_error("bar_aug_target: stable variant has no augmentation");
  if (b.variant == BarVariant::Unstable)
    return tighten(space_filter(b.fx, b.m));
  return b.fx;
}

Value bar_augmentation(const BarObject& b, const Value& p, int d) {
  Space tgt = bar_aug_target(b);
  Value raw = b.f_c_rooted ? mu_at(b.levels[0], p, d, 0)
                           : mu_sp_at(b.levels[0], p, d, 0);
  return canon(tgt, raw);
}

Value bar_aug_section(const BarObject& b, const Value& p, int d) {
  return canon(b.levels[0], eta_at(bar_aug_target(b), p, d, 0));
}

// --- identity suites ---------------------------------------------------------

namespace {

struct CellReport {
  long long checks = 0;
  long long failures = 0;
  long long closure = 0;
  long long phi_bad = 0;
  std::vector<std::string> failing;

  void fail(std::vector<std::string>&& parts) {
    ++failures;
    if (failing.size() < 4) {
      std::string s;
      for (const std::string& p : parts) s += p;
      failing.push_back(std::move(s));
    }
  }
};

std::string loc(const BarObject& b, int k, int d, const Value& v) {
  std::ostringstream os;
  os << to_string(b.variant) << " k=" << k << " d=" << d << " at "
     << value_str(v);
  return os.str();
}

}  // namespace

BarIdentityReport bar_check_identities(const BarObject& b, bool parallel) {
  std::vector<std::pair<int, int>> cells;
  for (int k = 0; k <= b.K; ++k)
    for (int d = 0; d <= b.bounds.max_dim; ++d) cells.emplace_back(k, d);
  // faces of the stable outer layer may exceed the enumeration cap of the
  // target level; the filter constraints themselves stay strict
  bool relax = b.variant == BarVariant::Stable;

  std::vector<CellReport> reports(cells.size());
  par::for_index(cells.size(), parallel, [&](std::size_t ci) {
    auto [k, d] = cells[ci];
    CellReport& rep = reports[ci];
    for (const Value& v : bar_cells(b, k, d)) {
      int ph = phi(b.levels[k], v);

      std::vector<Value> fd, sd;
      if (k >= 1)
        for (int i = 0; i <= k; ++i) fd.push_back(bar_face(b, k, i, v, d));
      if (k < b.K)
        for (int i = 0; i <= k; ++i)
          sd.push_back(bar_degeneracy(b, k, i, v, d));

      for (int i = 0; i < (int)fd.size(); ++i) {
        ++rep.checks;
        if (!space_contains(b.levels[k - 1], fd[i], d, relax)) ++rep.closure;
        if (phi(b.levels[k - 1], fd[i]) > ph) ++rep.phi_bad;
      }
      for (int i = 0; i < (int)sd.size(); ++i) {
        ++rep.checks;
        if (!space_contains(b.levels[k + 1], sd[i], d)) ++rep.closure;
        if (phi(b.levels[k + 1], sd[i]) != ph) ++rep.phi_bad;
      }

      // (1) d_i d_j = d_{j-1} d_i, i < j
      if (k >= 2)
        for (int j = 1; j <= k; ++j)
          for (int i = 0; i < j; ++i) {
            ++rep.checks;
            if (bar_face(b, k - 1, i, fd[j], d) !=
                bar_face(b, k - 1, j - 1, fd[i], d))
              rep.fail({"d", std::to_string(i), " d", std::to_string(j),
                        " != d", std::to_string(j - 1), " d",
                        std::to_string(i), " ", loc(b, k, d, v)});
          }

      // (2) s_i s_j = s_{j+1} s_i, i <= j
      if (k + 2 <= b.K)
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i <= j; ++i) {
            ++rep.checks;
            if (bar_degeneracy(b, k + 1, i, sd[j], d) !=
                bar_degeneracy(b, k + 1, j + 1, sd[i], d))
              rep.fail({"s", std::to_string(i), " s", std::to_string(j),
                        " != s", std::to_string(j + 1), " s",
                        std::to_string(i), " ", loc(b, k, d, v)});
          }

      if (k < b.K) {
        // (3) d_i s_j = s_{j-1} d_i, i < j
        if (k >= 1)
          for (int j = 1; j <= k; ++j)
            for (int i = 0; i < j; ++i) {
              ++rep.checks;
              if (bar_face(b, k + 1, i, sd[j], d) !=
                  bar_degeneracy(b, k - 1, j - 1, fd[i], d))
                rep.fail({"d", std::to_string(i), " s", std::to_string(j),
                          " != s", std::to_string(j - 1), " d",
                          std::to_string(i), " ", loc(b, k, d, v)});
            }

        // (4) d_j s_j = id = d_{j+1} s_j
        for (int j = 0; j <= k; ++j) {
          rep.checks += 2;
          if (bar_face(b, k + 1, j, sd[j], d) != v)
            rep.fail({"d", std::to_string(j), " s", std::to_string(j),
                      " != id ", loc(b, k, d, v)});
          if (bar_face(b, k + 1, j + 1, sd[j], d) != v)
            rep.fail({"d", std::to_string(j + 1), " s", std::to_string(j),
                      " != id ", loc(b, k, d, v)});
        }

        // (5) d_i s_j = s_j d_{i-1}, i > j + 1
        if (k >= 1)
          for (int j = 0; j <= k; ++j)
            for (int i = j + 2; i <= k + 1; ++i) {
              ++rep.checks;
              if (bar_face(b, k + 1, i, sd[j], d) !=
                  bar_degeneracy(b, k - 1, j, fd[i - 1], d))
                rep.fail({"d", std::to_string(i), " s", std::to_string(j),
                          " != s", std::to_string(j), " d",
                          std::to_string(i - 1), " ", loc(b, k, d, v)});
            }
      }
    }
  });

  BarIdentityReport out;
  for (const CellReport& r : reports) {
    out.checks += r.checks;
    out.failures += r.failures;
    out.closure_violations += r.closure;
    out.phi_violations += r.phi_bad;
    for (const std::string& s : r.failing)
      if (out.failing.size() < 8) out.failing.push_back(s);
  }
  return out;
}

BarExtraReport bar_check_extra(const BarObject& b) {
  if (b.variant == BarVariant::Stable)
    throw std::logic_error("bar_check_extra: stable variant has none");
  BarExtraReport out;
  auto fail = [&](const std::string& what, int k, int d, const Value& v) {
    ++out.failures;
    if (out.failing.size() < 8) out.failing.push_back(what + " " + loc(b, k, d, v));
  };

  Space aug_tgt = bar_aug_target(b);
  for (int d = 0; d <= b.bounds.max_dim; ++d) {
    // aug . section = id on the augmentation target
    for (const Value& w : enumerate_guarded(aug_tgt, d, b.bounds)) {
      ++out.checks;
      if (bar_augmentation(b, bar_aug_section(b, w, d), d) != w)
        fail("aug section != id", -1, d, w);
    }

    // the augmentation coequalizes the two faces of level 1
    if (b.K >= 1)
      for (const Value& z : bar_cells(b, 1, d)) {
        ++out.checks;
        if (bar_augmentation(b, bar_face(b, 1, 0, z, d), d) !=
            bar_augmentation(b, bar_face(b, 1, 1, z, d), d))
          fail("aug d0 != aug d1", 1, d, z);
      }

    for (int k = 0; k < b.K; ++k)
      for (const Value& v : bar_cells(b, k, d)) {
        Value e = bar_extra_degeneracy(b, k, v, d);
        ++out.checks;
        if (!space_contains(b.levels[k + 1], e, d)) fail("extra escapes", k, d, v);
        ++out.checks;
        if (bar_face(b, k + 1, 0, e, d) != v) fail("d0 extra != id", k, d, v);

        if (k == 0) {
          ++out.checks;
          if (bar_face(b, 1, 1, e, d) !=
              bar_aug_section(b, bar_augmentation(b, v, d), d))
            fail("d1 extra != section aug", k, d, v);
        }
        if (k >= 1)
          for (int i = 0; i <= k; ++i) {
            ++out.checks;
            if (bar_face(b, k + 1, i + 1, e, d) !=
                bar_extra_degeneracy(b, k - 1, bar_face(b, k, i, v, d), d))
              fail("d" + std::to_string(i + 1) + " extra != extra d" +
                       std::to_string(i),
                   k, d, v);
          }
        if (k + 1 < b.K)
          for (int i = 0; i <= k; ++i) {
            ++out.checks;
            if (bar_degeneracy(b, k + 1, i + 1, e, d) !=
                bar_extra_degeneracy(b, k + 1,
                                     bar_degeneracy(b, k, i, v, d), d))
              fail("s" + std::to_string(i + 1) + " extra != extra s" +
                       std::to_string(i),
                   k, d, v);
          }
      }
  }
  return out;
}

// --- pi0 of the realization ---------------------------------------------------

BarPi0 realize_pi0(const BarObject& b) {
  if (b.K < 1)
    throw std::invalid_argument("realize_pi0: needs levels 0 and 1");
  BarPi0 out;

  // set-level coequalizer over pi0 of level 0
  Space l0 = b.levels[0];
  if (b.variant == BarVariant::Stable) l0.cap = b.stable_outer_cap(1);
  Materialized m0, m1;
  try {
    m0 = materialize(l0, 1, true, b.bounds.simplex_cap);
    m1 = materialize(b.levels[1], 0, true, b.bounds.simplex_cap);
  } catch (const std::length_error&) {
    throw BoundExhausted("realize_pi0: level enumeration exceeds simplex_cap");
  }
  Pi0 p0 = pi0(m0.fs.s);
  out.level0_classes = p0.classes;

  std::vector<int> pos0(m0.fs.s.gens.size(), -1);
  const auto& verts0 = m0.fs.s.by_dim[0];
  for (int p = 0; p < (int)verts0.size(); ++p) pos0[verts0[p]] = p;
  auto class_of = [&](const Value& w) {
    return p0.class_of_vertex[pos0[m0.gen_of[0].at(w)]];
  };

  std::vector<int> uf(p0.classes);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int a) {
    return uf[a] == a ? a : uf[a] = find(uf[a]);
  };

  for (int g : m1.fs.s.by_dim[0]) {
    const Value& z = m1.gen_value[g];
    int a = find(class_of(bar_face(b, 1, 0, z, 0)));
    int c = find(class_of(bar_face(b, 1, 1, z, 0)));
    if (a != c) uf[std::max(a, c)] = std::min(a, c);
  }
  out.coeq_class.assign(p0.classes, -1);
  for (int c = 0; c < p0.classes; ++c) {
    int root = find(c);
    if (out.coeq_class[root] < 0) out.coeq_class[root] = out.coequalized++;
    out.coeq_class[c] = out.coeq_class[root];
  }

  // free-monoid presentation when level 0 is C-rooted
  if (b.levels[0].kind != SK::C) return out;
  EvalResult ev{b.X, b.levels[0], materialize(b.levels[0], 1)};
  out.cert = pi0_free(ev);
  out.monoidal = out.cert.applicable;
  if (!out.monoidal) return out;

  // measure level-0 values (root cap escapes allowed) against the same
  // generator order as the certificate: non-basepoint components of the
  // inner space, in class order
  Materialized mi = materialize(b.levels[0].kids[0], 1);
  Pi0 pin = pi0(mi.fs.s);
  std::vector<int> posi(mi.fs.s.gens.size(), -1);
  const auto& iverts = mi.fs.s.by_dim[0];
  for (int p = 0; p < (int)iverts.size(); ++p) posi[iverts[p]] = p;
  std::vector<int> gen_index(pin.classes, -1);
  int next = 0;
  for (int c = 0; c < pin.classes; ++c)
    if (c != pin.bp_class) gen_index[c] = next++;

  auto vec_of = [&](const Value& w) {
    std::vector<int> vec(out.cert.gens, 0);
    for (const Value& kid : w.kids) {
      int cls = pin.class_of_vertex[posi[mi.gen_of[0].at(kid)]];
      vec[gen_index[cls]] += 1;
    }
    return vec;
  };

  out.vec_consistent = next == out.cert.gens;
  const auto& lverts = ev.mat.fs.s.by_dim[0];
  std::vector<int> lpos(ev.mat.fs.s.gens.size(), -1);
  for (int p = 0; p < (int)lverts.size(); ++p) lpos[lverts[p]] = p;
  if (out.vec_consistent)
    for (int p = 0; p < (int)lverts.size(); ++p) {
      int c = out.cert.classes.class_of_vertex[p];
      if (vec_of(ev.mat.gen_value[lverts[p]]) != out.cert.vec_of_class[c])
        out.vec_consistent = false;
    }

  std::set<std::pair<std::vector<int>, std::vector<int>>> rels;
  for (int g : m1.fs.s.by_dim[0]) {
    const Value& z = m1.gen_value[g];
    auto l = vec_of(bar_face(b, 1, 0, z, 0));
    auto r = vec_of(bar_face(b, 1, 1, z, 0));
    if (l != r) rels.insert(std::minmax(l, r));
  }
  out.monoid.gens = out.cert.gens;
  out.monoid.relations.assign(rels.begin(), rels.end());
  return out;
}

// --- unstable vs stable --------------------------------------------------------

BarCompare compare_unstable_stable(const GammaExpr& F, const BaseSpace& X,
                                   int m, int K, const EvalBounds& b) {
  BarCompare out{bar_make(F, X, m, BarVariant::Unstable, K, b),
                 bar_make(F, X, m, BarVariant::Stable, K, b)};

  for (int k = 0; k <= K; ++k)
    for (int d = 0; d <= b.max_dim; ++d)
      for (const Value& v : bar_cells(out.unstable, k, d)) {
        ++out.points;
        Value w = canon(out.stable.levels[k], v);
        if (!space_contains(out.stable.levels[k], w, d)) out.contained = false;
        if (phi(out.stable.levels[k], w) != phi(out.unstable.levels[k], v))
          out.phi_preserved = false;

        // the identity on values must intertwine all structure maps
        if (k >= 1)
          for (int i = 0; i <= k; ++i)
            if (canon(out.stable.levels[k - 1],
                      bar_face(out.unstable, k, i, v, d)) !=
                bar_face(out.stable, k, i, w, d))
              out.switch_simplicial = false;
        if (k < K)
          for (int i = 0; i <= k; ++i)
            if (canon(out.stable.levels[k + 1],
                      bar_degeneracy(out.unstable, k, i, v, d)) !=
                bar_degeneracy(out.stable, k, i, w, d))
              out.switch_simplicial = false;
        if (d >= 1)
          for (int i = 0; i <= d; ++i)
            if (canon(out.stable.levels[k], face(out.unstable.levels[k], v, i)) !=
                face(out.stable.levels[k], w, i))
              out.switch_simplicial = false;
      }

  out.unstable_pi0 = realize_pi0(out.unstable);
  out.stable_pi0 = realize_pi0(out.stable);

  Materialized mf = materialize(bar_aug_target(out.unstable), 1);
  out.filter_f_classes = pi0(mf.fs.s).classes;
  out.unstable_matches_filter =
      out.unstable_pi0.coequalized == out.filter_f_classes;
  return out;
}

}  // namespace rankfilt
