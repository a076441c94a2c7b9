#include "rankfilt/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "rankfilt/parallel.hpp"

namespace rankfilt {

namespace {

// smallest nonzero |entry| of the trailing submatrix, row-major scan
bool find_pivot(const IntMat& m, int t, int& pi, int& pj) {
  std::int64_t best = 0;
  bool found = false;
  for (int i = t; i < m.rows; ++i)
    for (int j = t; j < m.cols; ++j) {
      std::int64_t v = std::llabs(m.at(i, j));
      if (v != 0 && (!found || v < best)) {
        best = v;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

struct OpLog {
  IntMat* u = nullptr;  // row side
  IntMat* v = nullptr;  // col side
};

// One elimination pass sweeping column t and row t with the current pivot.
// The per-row updates are independent, which is the parallel kernel.
void sweep(IntMat& m, int t, bool parallel, OpLog log) {
  const std::int64_t p = m.at(t, t);
  par::for_index(static_cast<std::size_t>(m.rows - t - 1), parallel, [&](std::size_t k) {
    int i = t + 1 + static_cast<int>(k);
    std::int64_t q = m.at(i, t) / p;
    m.row_axpy(i, t, q);
    if (log.u) log.u->row_axpy(i, t, q);
  });
  par::for_index(static_cast<std::size_t>(m.cols - t - 1), parallel, [&](std::size_t k) {
    int j = t + 1 + static_cast<int>(k);
    std::int64_t q = m.at(t, j) / p;
    m.col_axpy(j, t, q);
    if (log.v) log.v->col_axpy(j, t, q);
  });
}

bool cross_clean(const IntMat& m, int t) {
  for (int i = t + 1; i < m.rows; ++i)
    if (m.at(i, t) != 0) return false;
  for (int j = t + 1; j < m.cols; ++j)
    if (m.at(t, j) != 0) return false;
  return true;
}

std::vector<std::int64_t> run_smith(IntMat& m, bool parallel, OpLog log) {
  int steps = std::min(m.rows, m.cols);
  int t = 0;
  while (t < steps) {
    int pi, pj;
    if (!find_pivot(m, t, pi, pj)) break;
    m.swap_rows(t, pi);
    if (log.u) log.u->swap_rows(t, pi);
    m.swap_cols(t, pj);
    if (log.v) log.v->swap_cols(t, pj);

    while (true) {
      sweep(m, t, parallel, log);
      if (!cross_clean(m, t)) {
        // remainders are strictly smaller than the pivot; promote the new minimum
        if (find_pivot(m, t, pi, pj)) {
          m.swap_rows(t, pi);
          if (log.u) log.u->swap_rows(t, pi);
          m.swap_cols(t, pj);
          if (log.v) log.v->swap_cols(t, pj);
        }
        continue;
      }
      // pivot must divide the rest of the submatrix for the divisor chain
      int bi = -1;
      for (int i = t + 1; i < m.rows && bi < 0; ++i)
        for (int j = t + 1; j < m.cols; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      for (int j = 0; j < m.cols; ++j) m.at(t, j) = checked_add(m.at(t, j), m.at(bi, j));
      if (log.u)
        for (int j = 0; j < log.u->cols; ++j)
          log.u->at(t, j) = checked_add(log.u->at(t, j), log.u->at(bi, j));
    }

    if (m.at(t, t) < 0) {
      m.negate_row(t);
      if (log.u) log.u->negate_row(t);
    }
    ++t;
  }
  std::vector<std::int64_t> div;
  for (int i = 0; i < t; ++i) div.push_back(m.at(i, i));
  return div;
}

}  // namespace

SmithResult smith_normal_form(IntMat m, bool parallel) {
  SmithResult r;
  r.divisors = run_smith(m, parallel, {});
  return r;
}

SmithResult smith_normal_form_serial(IntMat m) { return smith_normal_form(std::move(m), false); }

SmithFull smith_full(IntMat m) {
  SmithFull f;
  f.u = IntMat(m.rows, m.rows);
  f.v = IntMat(m.cols, m.cols);
  for (int i = 0; i < m.rows; ++i) f.u.at(i, i) = 1;
  for (int j = 0; j < m.cols; ++j) f.v.at(j, j) = 1;
  f.divisors = run_smith(m, false, {&f.u, &f.v});
  f.d = std::move(m);
  return f;
}

std::string AbGroup::str() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank == 1) {
    os << "Z";
    first = false;
  } else if (rank > 1) {
    os << "Z^" << rank;
    first = false;
  }
  for (auto t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

AbGroup cokernel(const IntMat& m) {
  SmithResult s = smith_normal_form(m);
  AbGroup g;
  g.rank = m.rows - s.rank();
  for (auto d : s.divisors)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

AbGroup homology_at(int n_here, const IntMat& d_here, const IntMat& d_next) {
  SmithResult sh = smith_normal_form(d_here);
  SmithResult sn = smith_normal_form(d_next);
  AbGroup g;
  g.rank = n_here - sh.rank() - sn.rank();
  for (auto d : sn.divisors)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

}  // namespace rankfilt
