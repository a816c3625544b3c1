#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace npr {

using Int = boost::multiprecision::cpp_int;

/** Dense row-major matrix of arbitrary-precision integers. */
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  bool operator==(const IntMatrix&) const = default;

  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& rhs) const;

  void swap_rows(std::size_t i, std::size_t j);
  void negate_row(std::size_t i);
  /** row i += c * row k */
  void add_scaled_row(std::size_t i, std::size_t k, const Int& c);
  void swap_cols(std::size_t i, std::size_t j);
  /** col j += c * col k */
  void add_scaled_col(std::size_t j, std::size_t k, const Int& c);

  bool row_is_zero(std::size_t i) const;
  /** Copy of rows [first, last) restricted to columns [0, ncols). */
  IntMatrix slice(std::size_t first, std::size_t last, std::size_t ncols) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> entries_;
};

/** Floor division (remainder has the sign of b; here used with b > 0). */
Int floor_div(const Int& a, const Int& b);

struct HnfResult {
  IntMatrix h;  // row-style Hermite normal form of the input
  IntMatrix u;  // unimodular, h = u * input
};

/**
 * Row-style Hermite normal form: row echelon, pivots positive, entries above
 * each pivot reduced into [0, pivot). Columns are processed left to right;
 * remainder reduction uses Euclidean division with non-negative remainder;
 * ties between candidate pivot rows break to the lowest index.
 */
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
  IntMatrix s;  // diagonal, s = u * input * v
  IntMatrix u;  // unimodular row transform
  IntMatrix v;  // unimodular column transform
};

/**
 * Smith normal form with the divisibility chain s(0,0) | s(1,1) | ...,
 * all diagonal entries non-negative, zeros trailing.
 */
SnfResult snf(const IntMatrix& m);

/**
 * Z-basis (as rows, HNF-reduced) of { v : m * v = 0 }, v a column vector in
 * Z^cols. Returns a 0-row matrix when the kernel is trivial.
 */
IntMatrix integer_kernel(const IntMatrix& m);

/** Exact determinant (Bareiss fraction-free elimination); square input. */
Int det(const IntMatrix& m);

/** Rank over Q (= number of nonzero rows of the HNF). */
std::size_t rank(const IntMatrix& m);

}  // namespace npr
