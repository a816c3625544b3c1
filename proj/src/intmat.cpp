#include "npr/intmat.hpp"

#include "npr/errors.hpp"

#include <algorithm>
#include <utility>

namespace npr {

const char* to_string(Error::Kind kind) noexcept {
  switch (kind) {
    case Error::Kind::Parse: return "parse";
    case Error::Kind::Input: return "input";
    case Error::Kind::Precondition: return "precondition";
    case Error::Kind::Bound: return "bound";
    case Error::Kind::Divisibility: return "divisibility";
  }
  return "unknown";
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    fail(Error::Kind::Input, "matrix product dimension mismatch");
  IntMatrix p(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        p.at(i, j) += a * rhs.at(k, j);
    }
  return p;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMatrix::add_scaled_row(std::size_t i, std::size_t k, const Int& c) {
  if (c == 0) return;
  for (std::size_t col = 0; col < cols_; ++col) at(i, col) += c * at(k, col);
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::add_scaled_col(std::size_t j, std::size_t k, const Int& c) {
  if (c == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) at(r, j) += c * at(r, k);
}

bool IntMatrix::row_is_zero(std::size_t i) const {
  for (std::size_t c = 0; c < cols_; ++c)
    if (at(i, c) != 0) return false;
  return true;
}

IntMatrix IntMatrix::slice(std::size_t first, std::size_t last,
                           std::size_t ncols) const {
  IntMatrix out(last - first, ncols);
  for (std::size_t i = first; i < last; ++i)
    for (std::size_t j = 0; j < ncols; ++j) out.at(i - first, j) = at(i, j);
  return out;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  if (a - q * b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

HnfResult hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  const std::size_t nrows = m.rows();
  const std::size_t ncols = m.cols();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < ncols && pivot_row < nrows; ++col) {
    // Accumulate the column gcd at pivot_row. The entry with the smallest
    // absolute value is promoted each round (lowest index on ties), and the
    // rows below are reduced by Euclidean division until the column is clean.
    while (true) {
      std::size_t best = nrows;
      for (std::size_t r = pivot_row; r < nrows; ++r) {
        if (h.at(r, col) == 0) continue;
        if (best == nrows || abs(h.at(r, col)) < abs(h.at(best, col)))
          best = r;
      }
      if (best == nrows) break;  // column empty at and below pivot_row
      if (best != pivot_row) {
        h.swap_rows(best, pivot_row);
        u.swap_rows(best, pivot_row);
      }
      if (h.at(pivot_row, col) < 0) {
        h.negate_row(pivot_row);
        u.negate_row(pivot_row);
      }
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < nrows; ++r) {
        if (h.at(r, col) == 0) continue;
        Int q = floor_div(h.at(r, col), h.at(pivot_row, col));
        if (q != 0) {
          h.add_scaled_row(r, pivot_row, -q);
          u.add_scaled_row(r, pivot_row, -q);
        }
        if (h.at(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(pivot_row, col) == 0) continue;  // no pivot in this column
    // Reduce entries above the pivot into [0, pivot).
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Int q = floor_div(h.at(r, col), h.at(pivot_row, col));
      if (q != 0) {
        h.add_scaled_row(r, pivot_row, -q);
        u.add_scaled_row(r, pivot_row, -q);
      }
    }
    ++pivot_row;
  }
  return {std::move(h), std::move(u)};
}

SnfResult snf(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t nrows = m.rows();
  const std::size_t ncols = m.cols();
  const std::size_t n = std::min(nrows, ncols);
  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      // Smallest nonzero |entry| of the trailing submatrix, lowest (i, j) on
      // ties, becomes the pivot.
      std::size_t bi = nrows, bj = ncols;
      for (std::size_t i = k; i < nrows; ++i)
        for (std::size_t j = k; j < ncols; ++j) {
          if (s.at(i, j) == 0) continue;
          if (bi == nrows || abs(s.at(i, j)) < abs(s.at(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == nrows) break;  // trailing submatrix is zero
      if (bi != k) {
        s.swap_rows(bi, k);
        u.swap_rows(bi, k);
      }
      if (bj != k) {
        s.swap_cols(bj, k);
        v.swap_cols(bj, k);
      }
      if (s.at(k, k) < 0) {
        s.negate_row(k);
        u.negate_row(k);
      }
      bool clean = true;
      for (std::size_t i = k + 1; i < nrows; ++i) {
        if (s.at(i, k) == 0) continue;
        Int q = floor_div(s.at(i, k), s.at(k, k));
        if (q != 0) {
          s.add_scaled_row(i, k, -q);
          u.add_scaled_row(i, k, -q);
        }
        if (s.at(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < ncols; ++j) {
        if (s.at(k, j) == 0) continue;
        Int q = floor_div(s.at(k, j), s.at(k, k));
        if (q != 0) {
          s.add_scaled_col(j, k, -q);
          v.add_scaled_col(j, k, -q);
        }
        if (s.at(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Row k and column k hold only the pivot now. Enforce the divisibility
      // chain: absorb any offending row and restart this pivot.
      bool fixed = false;
      for (std::size_t i = k + 1; i < nrows && !fixed; ++i)
        for (std::size_t j = k + 1; j < ncols && !fixed; ++j)
          if (s.at(i, j) % s.at(k, k) != 0) {
            s.add_scaled_row(k, i, 1);
            u.add_scaled_row(k, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

IntMatrix integer_kernel(const IntMatrix& m) {
  // h = u * m^T; rows of u aligned with zero rows of h span the kernel of m.
  HnfResult e = hnf(m.transposed());
  std::size_t nz = 0;
  for (std::size_t i = 0; i < e.h.rows(); ++i)
    if (!e.h.row_is_zero(i)) ++nz;
  IntMatrix k = e.u.slice(nz, e.u.rows(), e.u.cols());
  HnfResult canon = hnf(k);
  std::size_t keep = 0;
  for (std::size_t i = 0; i < canon.h.rows(); ++i)
    if (!canon.h.row_is_zero(i)) ++keep;
  return canon.h.slice(0, keep, canon.h.cols());
}

Int det(const IntMatrix& m) {
  if (m.rows() != m.cols())
    fail(Error::Kind::Input, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a.at(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  HnfResult e = hnf(m);
  std::size_t r = 0;
  for (std::size_t i = 0; i < e.h.rows(); ++i)
    if (!e.h.row_is_zero(i)) ++r;
  return r;
}

}  // namespace npr
