#pragma once

#include "npr/certify.hpp"
#include "npr/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace npr {

/** Per-coordinate action of a quotient map, stated on decomposed coordinates. */
struct CoordRule {
  enum class Kind { Pass, Drop, Mod } kind = Kind::Pass;
  Int modulus;  // target modulus when kind == Mod
};

/**
 * A quotient of the source group by one of the two kernel families the
 * toolkit needs: the full torsion subgroup, or the subgroup of elements whose
 * finite order is not divisible by p^n. The map is realized coordinatewise on
 * the primary decomposition; `rules` has one entry per decomposed coordinate
 * (free coordinates included).
 */
struct QuotientMap {
  GroupSpec source;
  GroupSpec target;
  std::optional<PrimaryDecomposition> pre;  // applied before the rules
  std::vector<CoordRule> rules;
  std::string kernel_description;

  Element apply(const Element& e) const;
};

/** Quotient by the torsion subgroup; target Z^rank. */
QuotientMap quotient_by_torsion(const GroupSpec& spec);

/**
 * Quotient by { gamma of finite order : p^n does not divide order(gamma) }.
 * On the primary coordinates: factors for other primes are dropped, Z/p^e
 * with e <= n-1 is dropped, Z/p^e with e >= n maps a -> a mod p^{e-n+1};
 * free coordinates pass through.
 */
QuotientMap quotient_pn(const GroupSpec& spec, const Int& p, unsigned n);

struct MapSetResult {
  std::vector<Element> images;  // input order, with multiplicity
  bool injective = false;
  std::size_t distinct_count = 0;
  ElementSet distinct_images;           // first occurrences, input order
  std::vector<std::size_t> first_preimage;  // index into the input set
};

MapSetResult map_set(const QuotientMap& q, const ElementSet& e);

/** i-th decomposed coordinate of gamma as an element of that single factor. */
Element proj_coordinate(const PrimaryDecomposition& dec, const Element& gamma,
                        std::size_t i);
/** The single-factor spec that proj_coordinate lands in. */
GroupSpec proj_coordinate_spec(const PrimaryDecomposition& dec, std::size_t i);

/**
 * { p^{n-1} * gamma : gamma in E } in a p-group. Raises a precondition error
 * when two inputs collide or an image is the identity (either way E was not
 * p^n-PR, and the error says so).
 */
ElementSet power_map(const ElementSet& e, const Int& p, unsigned n);

/**
 * Lexicographically smallest canonical xi with p^{n-1} * xi = gamma, per
 * element; raises a divisibility error naming the first rootless gamma.
 */
ElementSet root_map(const ElementSet& e, const Int& p, unsigned n);

/**
 * Splitting of an N-PR set along the prime factorization N = prod p_i^{n_i}:
 * component sets E_i (the p_i-primary parts, index-aligned with the input),
 * each certified p_i^{n_i}-PR, plus the residual parts beta_gamma supported
 * away from the primes of N.
 */
struct Prop35Decomposition {
  bool ok = false;
  NprCertificate failure;  // populated when !ok (E was not N-PR)
  Int modulus;
  std::vector<Int> primes;
  std::vector<unsigned> exponents;
  PrimaryDecomposition ambient;
  std::vector<GroupSpec> component_specs;          // one per prime
  std::vector<std::vector<std::size_t>> component_coords;  // target coords per prime
  std::vector<ElementSet> components;              // E_i, index-aligned
  std::vector<NprCertificate> component_certificates;
  GroupSpec residual_spec;
  std::vector<std::size_t> residual_coords;
  std::vector<Element> residuals;  // beta per input element
};

Prop35Decomposition decompose_prop35(const ElementSet& e, const Int& n);

struct DimensionBound {
  std::size_t bound = 0;      // rank + number of p-power torsion factors
  std::size_t set_size = 0;
  bool npr_holds = false;     // is_npr(E, p)
  bool satisfied = true;      // npr_holds implies set_size <= bound
};

/**
 * Upper bound |E| <= rank + #(p-power factors) for p-PR sets supported on the
 * free and p-primary coordinates; elements with a component at another prime
 * are rejected.
 */
DimensionBound dimension_bound(const ElementSet& e, const Int& p);

}  // namespace npr
