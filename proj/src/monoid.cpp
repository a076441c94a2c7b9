#include "rankfilt/monoid.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rankfilt/parallel.hpp"

namespace rankfilt {

bool FPCommMonoid::valid() const {
  if (gens < 0) return false;
  for (const auto& [l, r] : relations)
    if ((int)l.size() != gens || (int)r.size() != gens) return false;
  return true;
}

std::string FPCommMonoid::str() const {
  std::ostringstream os;
  os << "<" << gens << " gens";
  if (!relations.empty()) os << ", " << relations.size() << " relations";
  os << ">";
  return os.str();
}

IntMat relation_matrix(const FPCommMonoid& m) {
  if (!m.valid()) throw std::invalid_argument("relation_matrix: bad presentation");
  IntMat r(m.gens, (int)m.relations.size());
  for (int j = 0; j < (int)m.relations.size(); ++j)
    for (int i = 0; i < m.gens; ++i)
      r.at(i, j) = m.relations[j].first[i] - m.relations[j].second[i];
  return r;
}

AbGroup group_completion(const FPCommMonoid& m) {
  return cokernel(relation_matrix(m));
}

bool hom_valid(const MonoidHom& h) {
  if (!h.src.valid() || !h.dst.valid()) return false;
  if (h.matrix.rows != h.dst.gens || h.matrix.cols != h.src.gens) return false;
  for (std::int64_t e : h.matrix.a)
    if (e < 0) return false;
  return true;
}

std::string GcCompare::str() const {
  std::ostringstream os;
  os << "gc " << src_gc.str() << " -> " << dst_gc.str() << ": "
     << (well_defined ? "" : "not well defined; ")
     << (injective ? "injective" : "not injective") << ", "
     << (surjective ? "surjective" : "not surjective")
     << (iso() ? " (iso)" : "");
  return os.str();
}

GcCompare gc_compare(const MonoidHom& h) {
  if (!hom_valid(h)) throw std::invalid_argument("gc_compare: bad hom");
  GcCompare out;
  IntMat ra = relation_matrix(h.src);
  IntMat rb = relation_matrix(h.dst);
  out.src_gc = cokernel(ra);
  out.dst_gc = cokernel(rb);

  out.well_defined = true;
  for (int j = 0; j < ra.cols; ++j) {
    std::vector<std::int64_t> img(h.dst.gens, 0);
    for (int i = 0; i < h.dst.gens; ++i)
      for (int k = 0; k < h.src.gens; ++k)
        img[i] = checked_add(img[i], checked_mul(h.matrix.at(i, k), ra.at(k, j)));
    if (!in_column_span(rb, img)) out.well_defined = false;
  }

  out.surjective = cokernel(h.matrix.hstack(rb)).is_trivial();

  // kernel of the induced map: x with Mx in span(rb), modulo span(ra).
  // Solutions project from the kernel lattice of [M | rb].
  IntMat stacked = h.matrix.hstack(rb);
  IntMat ker = integer_kernel(stacked);
  out.injective = true;
  for (int j = 0; j < ker.cols; ++j) {
    std::vector<std::int64_t> x(h.src.gens);
    for (int i = 0; i < h.src.gens; ++i) x[i] = ker.at(i, j);
    if (!in_column_span(ra, x)) out.injective = false;
  }
  return out;
}

// --- connectivity ------------------------------------------------------

IntMat chain_map_matrix(const SSetMap& f, int d) {
  static const std::vector<int> none;
  const auto& sd = d < (int)f.src->by_dim.size() ? f.src->by_dim[d] : none;
  const auto& dd = d < (int)f.dst->by_dim.size() ? f.dst->by_dim[d] : none;
  std::map<int, int> pos;
  for (int i = 0; i < (int)dd.size(); ++i) pos[dd[i]] = i;
  IntMat mat((int)dd.size(), (int)sd.size());
  for (int j = 0; j < (int)sd.size(); ++j) {
    SimplexRef img = f.apply(SimplexRef{{}, sd[j]});
    if (img.word.empty()) mat.at(pos.at(img.gen), j) += 1;
  }
  return mat;
}

static int chains(const SSet& s, int d) {
  if (d == -1) return 1;  // augmentation
  if (d < -1 || d >= (int)s.by_dim.size()) return 0;
  return (int)s.by_dim[d].size();
}

// boundary of the augmented complex; degree 0 is the augmentation row
static IntMat bnd(const SSet& s, int d) {
  if (d < 0) return IntMat(0, chains(s, d));
  if (d == 0) return boundary_matrix(s, 0);
  if (d >= (int)s.by_dim.size()) return IntMat(chains(s, d - 1), 0);
  return boundary_matrix(s, d);
}

// cone boundary in degree d: block matrix
//   [ bnd(dst, d)   F_{d-1}        ]
//   [ 0             -bnd(src, d-1) ]
// over D_d = C~_d(dst) + C~_{d-1}(src) with C~_{-1} = Z on both sides
static IntMat cone_boundary(const SSetMap& f, int d) {
  const SSet& src = *f.src;
  const SSet& dst = *f.dst;
  int rd = chains(dst, d - 1), rs = chains(src, d - 2);
  int cd = chains(dst, d), cs = chains(src, d - 1);
  IntMat out(rd + rs, cd + cs);
  IntMat bd = bnd(dst, d);
  for (int i = 0; i < bd.rows; ++i)
    for (int j = 0; j < bd.cols; ++j) out.at(i, j) = bd.at(i, j);
  IntMat fm(1, 1);
  fm.at(0, 0) = 1;  // identity on the augmentation line
  if (d >= 1) fm = chain_map_matrix(f, d - 1);
  for (int i = 0; i < fm.rows; ++i)
    for (int j = 0; j < fm.cols; ++j) out.at(i, cd + j) = fm.at(i, j);
  IntMat bs = bnd(src, d - 1);
  for (int i = 0; i < bs.rows; ++i)
    for (int j = 0; j < bs.cols; ++j) out.at(rd + i, cd + j) = -bs.at(i, j);
  return out;
}

std::string ConnectivityReport::str() const {
  std::ostringstream os;
  os << "connectivity " << connectivity << ";";
  for (int d = 0; d < (int)verdict.size(); ++d)
    os << " H" << d << ": " << verdict[d] << " (cone " << cone[d].str() << ")";
  return os.str();
}

ConnectivityReport connectivity_compare(const SSetMap& f, int max_deg,
                                        bool parallel) {
  if (f.src->truncation_dim < max_deg + 1 || f.dst->truncation_dim < max_deg + 1)
    throw TruncationError("connectivity_compare: truncation below max_deg + 1");
  std::string why;
  if (!is_simplicial(f, &why))
    throw std::invalid_argument("connectivity_compare: not simplicial: " + why);

  std::vector<IntMat> b;
  for (int d = 0; d <= max_deg + 1; ++d) b.push_back(cone_boundary(f, d));

  ConnectivityReport rep;
  rep.cone.resize(max_deg + 1);
  par::for_index(max_deg + 1, parallel, [&](std::size_t d) {
    rep.cone[d] = homology_at(b[d].cols, b[d], b[d + 1]);
  });
  for (int d = 0; d <= max_deg; ++d) {
    if (!rep.cone[d].is_trivial())
      rep.verdict.push_back("fails");
    else if (d + 1 <= max_deg && rep.cone[d + 1].is_trivial())
      rep.verdict.push_back("iso");
    else
      rep.verdict.push_back("epi");
  }
  rep.connectivity = -1;
  for (int d = 0; d <= max_deg && rep.cone[d].is_trivial(); ++d)
    rep.connectivity = d;
  return rep;
}

}  // namespace rankfilt
