#include "npr/intmat.hpp"

#include <doctest.h>

#include "testutil.hpp"

#include <vector>

using npr::Int;
using npr::IntMatrix;

namespace {

IntMatrix mat(std::size_t rows, std::size_t cols,
              std::initializer_list<long> vals) {
  IntMatrix m(rows, cols);
  auto it = vals.begin();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = *it++;
  return m;
}

bool is_unimodular(const IntMatrix& u) {
  Int d = npr::det(u);
  return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("hnf of the 2x2 worked example") {
  IntMatrix m = mat(2, 2, {1, 2, 3, 4});
  npr::HnfResult r = npr::hnf(m);
  CHECK(r.h == mat(2, 2, {1, 0, 0, 2}));
  CHECK(r.u * m == r.h);
  CHECK(is_unimodular(r.u));
}

TEST_CASE("hnf fixes matrices already in form") {
  IntMatrix m = mat(2, 2, {2, 0, 0, 3});
  npr::HnfResult r = npr::hnf(m);
  CHECK(r.h == m);
  CHECK(r.u == IntMatrix::identity(2));
}

TEST_CASE("hnf of the zero matrix") {
  IntMatrix m(3, 2);
  npr::HnfResult r = npr::hnf(m);
  CHECK(r.h == m);
  CHECK(is_unimodular(r.u));
}

TEST_CASE("snf of the 2x2 worked example") {
  IntMatrix m = mat(2, 2, {2, 4, 6, 8});
  npr::SnfResult r = npr::snf(m);
  CHECK(r.s == mat(2, 2, {2, 0, 0, 4}));
  CHECK(r.u * m * r.v == r.s);
  CHECK(is_unimodular(r.u));
  CHECK(is_unimodular(r.v));
}

TEST_CASE("snf fixes diagonal divisibility chains") {
  IntMatrix m = mat(2, 2, {3, 0, 0, 6});
  npr::SnfResult r = npr::snf(m);
  CHECK(r.s == m);
}

TEST_CASE("snf of a zero 1x1") {
  IntMatrix m(1, 1);
  npr::SnfResult r = npr::snf(m);
  CHECK(r.s == m);
}

TEST_CASE("integer kernel of [[2,4]]") {
  IntMatrix m = mat(1, 2, {2, 4});
  IntMatrix k = npr::integer_kernel(m);
  REQUIRE(k.rows() == 1);
  // Canonical representative under the row-HNF convention (positive pivot).
  CHECK(k == mat(1, 2, {2, -1}));
  for (std::size_t j = 0; j < 1; ++j)
    CHECK(Int(2) * k.at(0, 0) + Int(4) * k.at(0, 1) == 0);
}

TEST_CASE("integer kernel of the identity is trivial") {
  IntMatrix k = npr::integer_kernel(IntMatrix::identity(2));
  CHECK(k.rows() == 0);
  CHECK(k.cols() == 2);
}

TEST_CASE("integer kernel of a rank-1 repeated row") {
  IntMatrix m = mat(2, 2, {1, 1, 1, 1});
  IntMatrix k = npr::integer_kernel(m);
  REQUIRE(k.rows() == 1);
  CHECK(k == mat(1, 2, {1, -1}));
}

TEST_CASE("det matches cofactor values and multiplicativity") {
  CHECK(npr::det(mat(2, 2, {1, 2, 3, 4})) == -2);
  CHECK(npr::det(IntMatrix::identity(3)) == 1);
  CHECK(npr::det(mat(3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 5})) == 30);
  CHECK(npr::det(mat(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9})) == 0);
  auto g = testutil::make_rng(421);
  for (int iter = 0; iter < 30; ++iter) {
    IntMatrix a(3, 3), b(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        a.at(i, j) = testutil::rand_in(g, -9, 9);
        b.at(i, j) = testutil::rand_in(g, -9, 9);
      }
    CHECK(npr::det(a * b) == npr::det(a) * npr::det(b));
  }
}

TEST_CASE("rank counts independent rows") {
  CHECK(npr::rank(mat(2, 2, {1, 1, 1, 1})) == 1);
  CHECK(npr::rank(IntMatrix::identity(4)) == 4);
  CHECK(npr::rank(IntMatrix(2, 3)) == 0);
  CHECK(npr::rank(mat(3, 2, {1, 0, 0, 1, 1, 1})) == 2);
}

TEST_CASE("floor_div rounds toward negative infinity") {
  CHECK(npr::floor_div(7, 2) == 3);
  CHECK(npr::floor_div(-7, 2) == -4);
  CHECK(npr::floor_div(-6, 2) == -3);
  CHECK(npr::floor_div(6, 3) == 2);
  CHECK(npr::floor_div(0, 5) == 0);
}

TEST_CASE("hnf/snf transform identities on fuzzed matrices") {
  auto g = testutil::make_rng(1001);
  for (int iter = 0; iter < 120; ++iter) {
    IntMatrix m = testutil::random_matrix(g, 6, -50, 50);

    npr::HnfResult h = npr::hnf(m);
    CHECK(h.u * m == h.h);
    CHECK(is_unimodular(h.u));
    CHECK(testutil::is_hnf_form(h.h));

    npr::SnfResult s = npr::snf(m);
    CHECK(s.u * m * s.v == s.s);
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    // Diagonal, non-negative, divisibility chain, zeros trailing.
    bool ok_shape = true;
    for (std::size_t i = 0; i < s.s.rows(); ++i)
      for (std::size_t j = 0; j < s.s.cols(); ++j)
        if (i != j && s.s.at(i, j) != 0) ok_shape = false;
    CHECK(ok_shape);
    const std::size_t d = std::min(s.s.rows(), s.s.cols());
    for (std::size_t i = 0; i < d; ++i) CHECK(s.s.at(i, i) >= 0);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      if (s.s.at(i, i) == 0)
        CHECK(s.s.at(i + 1, i + 1) == 0);
      else
        CHECK(s.s.at(i + 1, i + 1) % s.s.at(i, i) == 0);
    }
  }
}

TEST_CASE("integer kernel properties on fuzzed matrices") {
  auto g = testutil::make_rng(2002);
  for (int iter = 0; iter < 120; ++iter) {
    IntMatrix m = testutil::random_matrix(g, 5, -20, 20);
    IntMatrix k = npr::integer_kernel(m);
    CHECK(k.cols() == m.cols());
    CHECK(k.rows() == m.cols() - npr::rank(m));
    CHECK(testutil::is_hnf_form(k));
    // Every kernel row annihilates m.
    for (std::size_t r = 0; r < k.rows(); ++r)
      for (std::size_t i = 0; i < m.rows(); ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
          acc += m.at(i, j) * k.at(r, j);
        CHECK(acc == 0);
      }
    // Random integer combinations of kernel rows stay in the kernel.
    if (k.rows() > 0) {
      std::vector<Int> comb(m.cols(), 0);
      for (std::size_t r = 0; r < k.rows(); ++r) {
        long c = testutil::rand_in(g, -4, 4);
        for (std::size_t j = 0; j < m.cols(); ++j)
          comb[j] += Int(c) * k.at(r, j);
      }
      for (std::size_t i = 0; i < m.rows(); ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
          acc += m.at(i, j) * comb[j];
        CHECK(acc == 0);
      }
    }
  }
}

TEST_CASE("hnf is idempotent as a lattice canonical form") {
  auto g = testutil::make_rng(3003);
  for (int iter = 0; iter < 40; ++iter) {
    IntMatrix m = testutil::random_matrix(g, 4, -30, 30);
    npr::HnfResult first = npr::hnf(m);
    npr::HnfResult second = npr::hnf(first.h);
    CHECK(second.h == first.h);
  }
}
