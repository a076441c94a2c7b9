#pragma once

// Exact integer matrices.  All arithmetic is overflow-checked: elimination is
// expected to stay tiny at the scales we handle, and a loud failure beats a
// silently wrong homology group.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankfilt {

struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 add overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 sub overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 mul overflow");
  return r;
}

struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> a;  // row major

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  bool operator==(const IntMat& o) const = default;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void negate_row(int i);
  // row i -= q * row j
  void row_axpy(int i, int j, std::int64_t q);
  void col_axpy(int i, int j, std::int64_t q);

  IntMat transposed() const;
  // columns of this, then columns of o
  IntMat hstack(const IntMat& o) const;

  static IntMat from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  std::string str() const;
};

// Ax = b over the integers; empty optional when unsolvable.
std::optional<std::vector<std::int64_t>> solve_integer(const IntMat& A,
                                                       const std::vector<std::int64_t>& b);

// basis (as columns) of { x : Ax = 0 }
IntMat integer_kernel(const IntMat& A);

// true iff b lies in the column span of A over the integers
bool in_column_span(const IntMat& A, const std::vector<std::int64_t>& b);

}  // namespace rankfilt
