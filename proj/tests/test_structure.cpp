#include "npr/structure.hpp"

#include <doctest.h>

#include "npr/enumerate.hpp"
#include "npr/errors.hpp"
#include "testutil.hpp"

#include <string>
#include <vector>

using npr::Element;
using npr::ElementSet;
using npr::GroupSpec;
using npr::Int;

namespace {

ElementSet set_of(const char* group, std::vector<std::vector<Int>> raw) {
  return npr::make_element_set(npr::parse_group_spec(group), std::move(raw));
}

/** All elements of a finite group as canonical vectors. */
std::vector<Element> all_elements(const GroupSpec& spec) {
  REQUIRE(spec.rank == 0);
  std::vector<Element> out;
  std::vector<Int> v(spec.torsion.size(), 0);
  while (true) {
    out.push_back(Element{v});
    std::size_t k = v.size();
    while (k > 0 && v[k - 1] == spec.torsion[k - 1] - 1) v[--k] = 0;
    if (k == 0) break;
    ++v[k - 1];
  }
  return out;
}

}  // namespace

TEST_CASE("quotient by the torsion subgroup") {
  npr::QuotientMap q = npr::quotient_by_torsion(npr::parse_group_spec("Z^2*Z/4"));
  CHECK(q.target.rank == 2);
  CHECK(q.target.torsion.empty());
  CHECK(q.apply(Element{{Int(3), Int(-1), Int(2)}}).coords ==
        std::vector<Int>{3, -1});

  npr::QuotientMap t = npr::quotient_by_torsion(npr::parse_group_spec("Z/4*Z/6"));
  CHECK(t.target.rank == 0);
  CHECK(t.target.torsion.empty());
  CHECK(t.apply(Element{{Int(3), Int(5)}}).coords.empty());

  npr::QuotientMap id = npr::quotient_by_torsion(npr::parse_group_spec("Z"));
  CHECK(id.target.rank == 1);
  CHECK(id.apply(Element{{Int(-7)}}).coords == std::vector<Int>{-7});
}

TEST_CASE("quotient_pn targets on the 24-element example") {
  GroupSpec g = npr::parse_group_spec("Z/4*Z/2*Z/3");

  npr::QuotientMap q1 = npr::quotient_pn(g, 2, 1);
  CHECK(q1.target.torsion == std::vector<Int>{4, 2});
  CHECK(q1.apply(Element{{Int(3), Int(1), Int(2)}}).coords ==
        std::vector<Int>{3, 1});

  npr::QuotientMap q2 = npr::quotient_pn(g, 2, 2);
  CHECK(q2.target.torsion == std::vector<Int>{2});
  CHECK(q2.apply(Element{{Int(3), Int(1), Int(2)}}).coords ==
        std::vector<Int>{1});
  CHECK(q2.apply(Element{{Int(2), Int(1), Int(1)}}).coords ==
        std::vector<Int>{0});

  npr::QuotientMap q3 = npr::quotient_pn(g, 3, 1);
  CHECK(q3.target.torsion == std::vector<Int>{3});
  CHECK(q3.apply(Element{{Int(3), Int(1), Int(2)}}).coords ==
        std::vector<Int>{2});

  CHECK_THROWS_AS(npr::quotient_pn(g, 4, 1), npr::Error);
  CHECK_THROWS_AS(npr::quotient_pn(g, 2, 0), npr::Error);
}

TEST_CASE("quotient_pn kernel is exactly the order condition") {
  GroupSpec g = npr::parse_group_spec("Z/4*Z/2*Z/3");
  for (const Int& p : {Int(2), Int(3)}) {
    for (unsigned n = 1; n <= 3; ++n) {
      npr::QuotientMap q = npr::quotient_pn(g, p, n);
      Int pn = 1;
      for (unsigned i = 0; i < n; ++i) pn *= p;
      for (const Element& el : all_elements(g)) {
        bool in_kernel = npr::is_identity(q.target, q.apply(el));
        Int ord = *npr::order(g, el);
        CHECK(in_kernel == (ord % pn != 0));
      }
    }
  }
}

TEST_CASE("quotient maps are surjective homomorphisms (fuzz)") {
  auto g = testutil::make_rng(1199);
  for (int iter = 0; iter < 30; ++iter) {
    GroupSpec spec = testutil::random_oracle_instance(g).set.spec;
    if (spec.total_order().value_or(Int(2001)) > 400) continue;
    long p = std::vector<long>{2, 3, 5}[testutil::rand_in(g, 0, 2)];
    unsigned n = (unsigned)testutil::rand_in(g, 1, 2);
    npr::QuotientMap q = npr::quotient_pn(spec, p, n);
    std::vector<Element> src = all_elements(spec);
    std::set<std::vector<Int>> image;
    for (const Element& a : src) image.insert(q.apply(a).coords);
    CHECK(Int(image.size()) == *q.target.total_order());
    for (int k = 0; k < 8; ++k) {
      const Element& a = src[testutil::rand_in(g, 0, (long)src.size() - 1)];
      const Element& b = src[testutil::rand_in(g, 0, (long)src.size() - 1)];
      Element sum = npr::add(spec, a, b);
      CHECK(q.apply(sum).coords ==
            npr::add(q.target, q.apply(a), q.apply(b)).coords);
    }
  }
}

TEST_CASE("map_set reports images and injectivity") {
  ElementSet e = set_of("Z/4*Z/2*Z/2", {{1, 1, 0}, {1, 0, 1}});
  GroupSpec g = e.spec;

  // quotient_pn(2,2) lands in Z/2 (the Z/4 coordinate mod 2); both map to 1.
  npr::MapSetResult r22 = npr::map_set(npr::quotient_pn(g, 2, 2), e);
  REQUIRE(r22.images.size() == 2);
  CHECK(r22.images[0].coords == std::vector<Int>{1});
  CHECK(r22.images[1].coords == std::vector<Int>{1});
  CHECK(!r22.injective);
  CHECK(r22.distinct_count == 1);
  CHECK(r22.first_preimage == std::vector<std::size_t>{0});

  npr::MapSetResult r21 = npr::map_set(npr::quotient_pn(g, 2, 1), e);
  CHECK(r21.injective);
  CHECK(r21.distinct_count == 2);

  ElementSet f = set_of("Z/2*Z/3", {{1, 0}, {1, 1}});
  npr::MapSetResult r31 = npr::map_set(npr::quotient_pn(f.spec, 3, 1), f);
  REQUIRE(r31.images.size() == 2);
  CHECK(r31.images[0].coords == std::vector<Int>{0});
  CHECK(r31.images[1].coords == std::vector<Int>{1});
  CHECK(r31.injective);

  ElementSet wrong = set_of("Z/8", {{1}});
  CHECK_THROWS_AS(npr::map_set(npr::quotient_pn(g, 2, 1), wrong), npr::Error);
}

TEST_CASE("primary coordinate projections") {
  npr::PrimaryDecomposition d6 =
      npr::primary_decompose(npr::parse_group_spec("Z/6"));
  REQUIRE(d6.coords.size() == 2);
  CHECK(d6.coords[0].prime == 2);
  CHECK(npr::proj_coordinate(d6, Element{{Int(1)}}, 0).coords ==
        std::vector<Int>{1});
  CHECK(npr::proj_coordinate_spec(d6, 0).torsion == std::vector<Int>{2});
  CHECK(npr::proj_coordinate(d6, Element{{Int(0)}}, 0).coords ==
        std::vector<Int>{0});
  CHECK(npr::proj_coordinate(d6, Element{{Int(0)}}, 1).coords ==
        std::vector<Int>{0});

  npr::PrimaryDecomposition d43 =
      npr::primary_decompose(npr::parse_group_spec("Z/4*Z/3"));
  CHECK(npr::proj_coordinate(d43, Element{{Int(2), Int(1)}}, 0).coords ==
        std::vector<Int>{2});
  CHECK_THROWS_AS(npr::proj_coordinate(d43, Element{{Int(2), Int(1)}}, 2),
                  npr::Error);
}

TEST_CASE("power map on p-groups") {
  ElementSet e1 = set_of("Z/8", {{1}});
  CHECK(npr::power_map(e1, 2, 2).elements[0].coords == std::vector<Int>{2});

  ElementSet e2 = set_of("Z/4*Z/4", {{1, 0}, {0, 1}});
  ElementSet p2 = npr::power_map(e2, 2, 2);
  CHECK(p2.elements[0].coords == std::vector<Int>{2, 0});
  CHECK(p2.elements[1].coords == std::vector<Int>{0, 2});
  CHECK(npr::is_npr(p2, 2).holds);

  ElementSet bad = set_of("Z/4", {{2}});
  CHECK_THROWS_WITH_AS(npr::power_map(bad, 2, 2),
                       doctest::Contains("not 4-PR"), npr::Error);

  ElementSet collide = set_of("Z/4*Z/4", {{1, 0}, {3, 0}});
  CHECK_THROWS_WITH_AS(npr::power_map(collide, 2, 2),
                       doctest::Contains("not 4-PR"), npr::Error);

  ElementSet mixed = set_of("Z/6", {{1}});
  CHECK_THROWS_AS(npr::power_map(mixed, 2, 2), npr::Error);
}

TEST_CASE("root map on p-groups") {
  ElementSet e = set_of("Z/8", {{2}});
  CHECK(npr::root_map(e, 2, 2).elements[0].coords == std::vector<Int>{1});

  ElementSet odd = set_of("Z/8", {{1}});
  try {
    npr::root_map(odd, 2, 2);
    FAIL("expected a divisibility error");
  } catch (const npr::Error& err) {
    CHECK(err.kind() == npr::Error::Kind::Divisibility);
    CHECK(std::string(err.what()).find("position 0") != std::string::npos);
    CHECK(std::string(err.what()).find("not divisible by 2") !=
          std::string::npos);
  }

  ElementSet zero = set_of("Z/8", {{0}});
  CHECK(npr::root_map(zero, 2, 2).elements[0].coords == std::vector<Int>{0});
}

TEST_CASE("power/root round trip and PR contracts (fuzz)") {
  auto g = testutil::make_rng(3311);
  int done = 0;
  while (done < 50) {
    long p = std::vector<long>{2, 3}[testutil::rand_in(g, 0, 1)];
    GroupSpec spec = testutil::random_p_spec(g, p, 3, 27);
    ElementSet e = testutil::random_set(
        g, spec, (std::size_t)testutil::rand_in(g, 1, 2));
    unsigned n = (unsigned)testutil::rand_in(g, 1, 2);
    bool has_identity = false;
    for (const Element& el : e.elements)
      if (npr::is_identity(e.spec, el)) has_identity = true;
    if (has_identity) continue;  // power_map reports identity images
    ++done;

    ElementSet roots = e;
    bool rooted = true;
    try {
      roots = npr::root_map(e, p, n);
    } catch (const npr::Error&) {
      rooted = false;
    }
    if (rooted) {
      ElementSet back = npr::power_map(roots, p, n);
      REQUIRE(back.size() == e.size());
      for (std::size_t j = 0; j < e.size(); ++j)
        CHECK(back.elements[j].coords == e.elements[j].coords);
      Int pn = 1;
      for (unsigned i = 0; i < n; ++i) pn *= p;
      if (npr::is_npr(e, p).holds) CHECK(npr::is_npr(roots, pn).holds);
    }

    Int pn = 1;
    for (unsigned i = 0; i < n; ++i) pn *= p;
    if (npr::is_npr(e, pn).holds) {
      ElementSet powered = npr::power_map(e, p, n);
      CHECK(powered.size() == e.size());
      CHECK(npr::is_npr(powered, p).holds);
    }
  }
}

TEST_CASE("Prop 3.5 decomposition of a 6-PR pair") {
  ElementSet e = set_of("Z/2*Z/2*Z/3*Z/3", {{1, 0, 1, 0}, {0, 1, 0, 1}});
  npr::Prop35Decomposition d = npr::decompose_prop35(e, 6);
  REQUIRE(d.ok);
  CHECK(d.modulus == 6);
  CHECK(d.primes == std::vector<Int>{2, 3});
  CHECK(d.exponents == std::vector<unsigned>{1, 1});
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0].spec.torsion == std::vector<Int>{2, 2});
  CHECK(d.components[0].elements[0].coords == std::vector<Int>{1, 0});
  CHECK(d.components[0].elements[1].coords == std::vector<Int>{0, 1});
  CHECK(d.components[1].spec.torsion == std::vector<Int>{3, 3});
  CHECK(d.components[1].elements[0].coords == std::vector<Int>{1, 0});
  CHECK(d.components[1].elements[1].coords == std::vector<Int>{0, 1});
  CHECK(d.component_certificates[0].holds);
  CHECK(d.component_certificates[1].holds);
  CHECK(d.residual_spec.coord_count() == 0);
  for (const Element& beta : d.residuals) CHECK(beta.coords.empty());
}

TEST_CASE("Prop 3.5 residual collects foreign primary parts") {
  ElementSet e = set_of("Z/2*Z/3*Z/5", {{1, 1, 1}});
  npr::Prop35Decomposition d = npr::decompose_prop35(e, 6);
  REQUIRE(d.ok);
  CHECK(d.components[0].elements[0].coords == std::vector<Int>{1});
  CHECK(d.components[1].elements[0].coords == std::vector<Int>{1});
  CHECK(d.residual_spec.torsion == std::vector<Int>{5});
  CHECK(d.residuals[0].coords == std::vector<Int>{1});

  ElementSet s = set_of("Z/2*Z/3", {{1, 1}});
  npr::Prop35Decomposition ds = npr::decompose_prop35(s, 6);
  REQUIRE(ds.ok);
  CHECK(ds.components[0].elements[0].coords == std::vector<Int>{1});
  CHECK(ds.components[1].elements[0].coords == std::vector<Int>{1});
  CHECK(ds.residual_spec.coord_count() == 0);
}

TEST_CASE("Prop 3.5 rejects non-N-PR input with a certificate") {
  ElementSet e = set_of("Z/4*Z/2*Z/2", {{1, 1, 0}, {1, 0, 1}});
  npr::Prop35Decomposition d = npr::decompose_prop35(e, 4);
  CHECK(!d.ok);
  CHECK(!d.failure.holds);
  CHECK(d.failure.relation == std::vector<Int>{2, 2});

  ElementSet infinite = set_of("Z^1", {{1}});
  CHECK_THROWS_AS(npr::decompose_prop35(infinite, 2), npr::Error);
}

TEST_CASE("Prop 3.5 reconstruction identity (fuzz)") {
  auto g = testutil::make_rng(5522);
  int done = 0;
  while (done < 40) {
    testutil::OracleInstance inst = testutil::random_oracle_instance(g);
    if (inst.n < 2) continue;
    if (!npr::is_npr(inst.set, inst.n).holds) continue;
    ++done;
    npr::Prop35Decomposition d = npr::decompose_prop35(inst.set, inst.n);
    REQUIRE(d.ok);
    for (const npr::NprCertificate& c : d.component_certificates)
      CHECK(c.holds);
    // Scatter components and residual back into decomposed coordinates.
    for (std::size_t j = 0; j < inst.set.size(); ++j) {
      std::vector<Int> dec(d.ambient.target.coord_count(), 0);
      for (std::size_t i = 0; i < d.components.size(); ++i)
        for (std::size_t k = 0; k < d.component_coords[i].size(); ++k)
          dec[d.component_coords[i][k]] =
              d.components[i].elements[j].coords[k];
      for (std::size_t k = 0; k < d.residual_coords.size(); ++k)
        dec[d.residual_coords[k]] = d.residuals[j].coords[k];
      Element back = d.ambient.inverse(Element{dec});
      CHECK(back.coords == inst.set.elements[j].coords);
    }
  }
}

TEST_CASE("dimension bound") {
  npr::DimensionBound b1 =
      npr::dimension_bound(set_of("Z/4*Z/2", {{1, 0}, {0, 1}}), 2);
  CHECK(b1.bound == 2);
  CHECK(b1.set_size == 2);
  CHECK(b1.npr_holds);
  CHECK(b1.satisfied);

  npr::DimensionBound b2 =
      npr::dimension_bound(set_of("Z^2", {{1, 0}, {0, 1}, {1, 1}}), 3);
  CHECK(b2.bound == 2);
  CHECK(b2.set_size == 3);
  CHECK(!b2.npr_holds);
  CHECK(b2.satisfied);

  npr::DimensionBound b3 =
      npr::dimension_bound(set_of("Z/9*Z/3", {{1, 0}, {0, 1}}), 3);
  CHECK(b3.bound == 2);
  CHECK(b3.npr_holds);
  CHECK(b3.satisfied);

  // Elements with components at a foreign prime are outside the hypothesis.
  CHECK_THROWS_AS(npr::dimension_bound(set_of("Z/6", {{1}}), 2), npr::Error);
  // ... but foreign coordinates that E never touches are fine.
  npr::DimensionBound b4 =
      npr::dimension_bound(set_of("Z/4*Z/3", {{1, 0}}), 2);
  CHECK(b4.bound == 1);
  CHECK(b4.satisfied);
}

TEST_CASE("Prop 3.2 equivalence on random p-group instances") {
  auto g = testutil::make_rng(7733);
  int done = 0;
  while (done < 30) {
    long p = std::vector<long>{2, 3, 5}[testutil::rand_in(g, 0, 2)];
    GroupSpec spec = testutil::random_p_spec(g, p, 3, 2000);
    ElementSet e = testutil::random_set(
        g, spec, (std::size_t)testutil::rand_in(g, 1, 3));
    unsigned n = (unsigned)testutil::rand_in(g, 1, 3);
    Int pn = 1;
    for (unsigned i = 0; i < n; ++i) pn *= p;
    ++done;
    bool lhs = npr::is_npr(e, pn).holds;
    bool all_k = true, some_k = false;
    for (unsigned k = 1; k <= n; ++k) {
      npr::MapSetResult m = npr::map_set(npr::quotient_pn(e.spec, p, k), e);
      Int pr = 1;
      for (unsigned i = 0; i < n + 1 - k; ++i) pr *= p;
      bool cond = m.injective && npr::is_npr(m.distinct_images, pr).holds;
      all_k = all_k && cond;
      some_k = some_k || cond;
    }
    CHECK(lhs == all_k);
    CHECK(lhs == some_k);
  }
}

TEST_CASE("Cor 3.4 equivalence on composite moduli") {
  auto g = testutil::make_rng(9911);
  int done = 0;
  while (done < 30) {
    testutil::OracleInstance inst = testutil::random_oracle_instance(g);
    if (inst.n < 2) continue;
    ++done;
    bool lhs = npr::is_npr(inst.set, inst.n).holds;
    bool rhs = true;
    for (auto [p, n] : npr::factorize(inst.n)) {
      npr::MapSetResult m =
          npr::map_set(npr::quotient_pn(inst.set.spec, p, n), inst.set);
      if (!m.injective || !npr::is_npr(m.distinct_images, p).holds) {
        rhs = false;
        break;
      }
    }
    CHECK(lhs == rhs);
  }
}
