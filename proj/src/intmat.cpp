#include "rankfilt/intmat.hpp"

#include <algorithm>
#include <sstream>

#include "rankfilt/smith.hpp"

namespace rankfilt {

void IntMat::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
}

void IntMat::negate_row(int i) {
  for (int c = 0; c < cols; ++c) at(i, c) = checked_sub(0, at(i, c));
}

void IntMat::row_axpy(int i, int j, std::int64_t q) {
  if (q == 0) return;
  for (int c = 0; c < cols; ++c) at(i, c) = checked_sub(at(i, c), checked_mul(q, at(j, c)));
}

void IntMat::col_axpy(int i, int j, std::int64_t q) {
  if (q == 0) return;
  for (int r = 0; r < rows; ++r) at(r, i) = checked_sub(at(r, i), checked_mul(q, at(r, j)));
}

IntMat IntMat::transposed() const {
  IntMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMat IntMat::hstack(const IntMat& o) const {
  IntMat r(std::max(rows, o.rows), cols + o.cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
  for (int i = 0; i < o.rows; ++i)
    for (int j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
  return r;
}

IntMat IntMat::from_rows(const std::vector<std::vector<std::int64_t>>& rws) {
  IntMat m(static_cast<int>(rws.size()), rws.empty() ? 0 : static_cast<int>(rws[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rws[i][j];
  return m;
}

std::string IntMat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows; ++i) {
    os << (i ? "\n" : "") << "[";
    for (int j = 0; j < cols; ++j) os << (j ? " " : "") << at(i, j);
    os << "]";
  }
  return os.str();
}

// Solving and membership go through the full Smith form: with UAV = D,
// Ax = b  <=>  D y = U b with x = V y.
std::optional<std::vector<std::int64_t>> solve_integer(const IntMat& A,
                                                       const std::vector<std::int64_t>& b) {
  SmithFull f = smith_full(A);
  std::vector<std::int64_t> ub(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < A.rows; ++j) s = checked_add(s, checked_mul(f.u.at(i, j), b[j]));
    ub[i] = s;
  }
  std::vector<std::int64_t> y(A.cols, 0);
  int r = static_cast<int>(f.divisors.size());
  for (int i = 0; i < A.rows; ++i) {
    if (i < r) {
      if (ub[i] % f.divisors[i] != 0) return std::nullopt;
      y[i] = ub[i] / f.divisors[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<std::int64_t> x(A.cols, 0);
  for (int i = 0; i < A.cols; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < A.cols; ++j) s = checked_add(s, checked_mul(f.v.at(i, j), y[j]));
    x[i] = s;
  }
  return x;
}

IntMat integer_kernel(const IntMat& A) {
  SmithFull f = smith_full(A);
  int r = static_cast<int>(f.divisors.size());
  // kernel of D is spanned by the last cols-r standard vectors; push through V
  IntMat k(A.cols, A.cols - r);
  for (int j = r; j < A.cols; ++j)
    for (int i = 0; i < A.cols; ++i) k.at(i, j - r) = f.v.at(i, j);
  return k;
}

bool in_column_span(const IntMat& A, const std::vector<std::int64_t>& b) {
  return solve_integer(A, b).has_value();
}

}  // namespace rankfilt
