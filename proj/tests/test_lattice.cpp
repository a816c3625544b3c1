#include "npr/lattice.hpp"

#include <doctest.h>

#include "npr/intmat.hpp"
#include "testutil.hpp"

#include <vector>

using npr::ElementSet;
using npr::GroupSpec;
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

ElementSet set_of(const char* group, std::vector<std::vector<Int>> raw) {
  return npr::make_element_set(npr::parse_group_spec(group), std::move(raw));
}

/** HNF basis of the lattice generated by a list of relation vectors. */
IntMatrix hnf_span(const std::vector<std::vector<Int>>& rows, std::size_t s) {
  IntMatrix m(rows.size(), s);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < s; ++j) m.at(i, j) = rows[i][j];
  IntMatrix h = npr::hnf(m).h;
  std::size_t nz = 0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    if (!h.row_is_zero(i)) ++nz;
  return h.slice(0, nz, h.cols());
}

}  // namespace

TEST_CASE("embedding matrix has the documented block layout") {
  ElementSet e = set_of("Z/4*Z/2*Z/2", {{1, 1, 0}, {1, 0, 1}});
  IntMatrix m = npr::embedding_matrix(e);
  CHECK(m == mat(3, 5,
                 {1, 1, 4, 0, 0,
                  1, 0, 0, 2, 0,
                  0, 1, 0, 0, 2}));

  ElementSet mixed = set_of("Z^1*Z/2", {{3, 1}});
  CHECK(npr::embedding_matrix(mixed) == mat(2, 2, {3, 0, 1, 2}));
}

TEST_CASE("relation lattice of the torsion pair example") {
  ElementSet e = set_of("Z/4*Z/2*Z/2", {{1, 1, 0}, {1, 0, 1}});
  npr::RelationLattice l = npr::relation_lattice(e);
  CHECK(l.set_size == 2);
  CHECK(l.basis == mat(2, 2, {2, 2, 0, 4}));
}

TEST_CASE("relation lattice of an independent free pair is trivial") {
  ElementSet e = set_of("Z^2", {{1, 0}, {1, 2}});
  npr::RelationLattice l = npr::relation_lattice(e);
  CHECK(l.basis.rows() == 0);
  CHECK(l.basis.cols() == 2);
}

TEST_CASE("relation lattice of a singleton is the order lattice") {
  ElementSet e = set_of("Z/2*Z/3", {{1, 1}});
  CHECK(npr::relation_lattice(e).basis == mat(1, 1, {6}));

  ElementSet f = set_of("Z/8", {{2}});
  CHECK(npr::relation_lattice(f).basis == mat(1, 1, {4}));
}

TEST_CASE("relation lattice of the empty set") {
  ElementSet e{npr::parse_group_spec("Z/4"), {}};
  npr::RelationLattice l = npr::relation_lattice(e);
  CHECK(l.set_size == 0);
  CHECK(l.basis.rows() == 0);
  CHECK(l.basis.cols() == 0);
}

TEST_CASE("every basis row evaluates to the identity") {
  auto g = testutil::make_rng(1234);
  for (int iter = 0; iter < 60; ++iter) {
    testutil::OracleInstance inst = testutil::random_oracle_instance(g);
    npr::RelationLattice l = npr::relation_lattice(inst.set);
    CHECK(testutil::is_hnf_form(l.basis));
    for (std::size_t r = 0; r < l.basis.rows(); ++r) {
      std::vector<Int> row(l.basis.cols());
      for (std::size_t j = 0; j < row.size(); ++j) row[j] = l.basis.at(r, j);
      CHECK(testutil::is_relation(inst.set, row));
    }
  }
}

TEST_CASE("relation lattice equals the boxed relation enumeration") {
  auto g = testutil::make_rng(5678);
  int done = 0;
  while (done < 25) {
    testutil::OracleInstance inst = testutil::random_oracle_instance(g);
    if (inst.set.size() > 3) continue;  // keep the box search quick here
    ++done;
    long box = (2 * testutil::order_lcm(inst.set)).convert_to<long>();
    std::vector<std::vector<Int>> found =
        testutil::boxed_relations(inst.set, box);
    IntMatrix expect = hnf_span(found, inst.set.size());
    npr::RelationLattice l = npr::relation_lattice(inst.set);
    CHECK(l.basis == expect);
  }
}

TEST_CASE("determinant of the basis equals the generated subgroup order") {
  auto g = testutil::make_rng(9012);
  int done = 0;
  while (done < 25) {
    testutil::OracleInstance inst = testutil::random_oracle_instance(g);
    if (*inst.set.spec.total_order() > 600) continue;
    ++done;
    npr::RelationLattice l = npr::relation_lattice(inst.set);
    // Pure torsion: the lattice always has full rank s.
    REQUIRE(l.basis.rows() == inst.set.size());
    CHECK(npr::det(l.basis) == testutil::subgroup_order(inst.set));
  }
}
