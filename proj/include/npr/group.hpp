#pragma once

#include "npr/intmat.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace npr {

using Rat = boost::multiprecision::cpp_rational;

/**
 * A finitely generated abelian group Z^rank + Z/m_1 + ... + Z/m_t, described
 * by its free rank and the list of torsion orders (each >= 2, in fixed
 * coordinate order; the m_i need not be prime powers or sorted).
 */
struct GroupSpec {
  std::size_t rank = 0;
  std::vector<Int> torsion;

  std::size_t coord_count() const { return rank + torsion.size(); }
  bool operator==(const GroupSpec&) const = default;

  /** Total order for rank-0 specs; nullopt when the group is infinite. */
  std::optional<Int> total_order() const;
  bool is_p_group(const Int& p) const;
};

/** Grammar: ("Z^" k)? ("*" "Z/" m)*, whitespace-insensitive, e.g. "Z^2 * Z/4 * Z/2". */
GroupSpec parse_group_spec(const std::string& text);
std::string to_string(const GroupSpec& spec);

/**
 * A character of the dual group, written additively in coordinates: free
 * coordinates are arbitrary integers, torsion coordinate i lives in
 * [0, m_i). Elements are plain coordinate vectors; every operation takes the
 * owning GroupSpec explicitly.
 */
struct Element {
  std::vector<Int> coords;
  bool operator==(const Element&) const = default;
  bool operator<(const Element& rhs) const { return coords < rhs.coords; }
};

/** Reduce raw coordinates into canonical form (torsion entries into [0, m_i)). */
Element canonicalize(const GroupSpec& spec, std::vector<Int> raw);
bool is_canonical(const GroupSpec& spec, const Element& e);
bool is_identity(const GroupSpec& spec, const Element& e);
Element identity_element(const GroupSpec& spec);

Element add(const GroupSpec& spec, const Element& a, const Element& b);
Element negate(const GroupSpec& spec, const Element& a);
Element scale(const GroupSpec& spec, const Int& k, const Element& a);

/** Order of the element: nullopt means infinite (some free coordinate nonzero). */
std::optional<Int> order(const GroupSpec& spec, const Element& e);

/**
 * Finite list of pairwise distinct canonical elements of one group. The
 * enumeration order is part of the value (certificates index into it).
 */
struct ElementSet {
  GroupSpec spec;
  std::vector<Element> elements;

  std::size_t size() const { return elements.size(); }
  bool operator==(const ElementSet&) const = default;
};

/** Validates lengths, canonicalizes, and rejects duplicates. */
ElementSet make_element_set(const GroupSpec& spec,
                            std::vector<std::vector<Int>> raw);
ElementSet make_element_set(const GroupSpec& spec, std::vector<Element> elems);

/** Exact rational on the torus, kept reduced into [0, 1). */
struct UnitRational {
  Rat value;  // invariant: 0 <= value < 1, lowest terms

  UnitRational() = default;
  explicit UnitRational(const Rat& q);
  bool operator==(const UnitRational&) const = default;
};

Rat frac_mod1(const Rat& q);

/** Exact circular distance between two torus points, in [0, 1/2]. */
Rat circular_distance(const UnitRational& a, const UnitRational& b);

/** Chord length 2*sin(pi*d) for a circular distance d; the only float boundary. */
double chord_length(const Rat& d);

/**
 * A point of the group G itself, i.e. an evaluation argument: free
 * coordinates are torus points (exact rationals mod 1), torsion coordinate i
 * is an integer in [0, m_i).
 */
struct DualPoint {
  std::vector<Rat> free_coords;     // each in [0, 1)
  std::vector<Int> torsion_coords;  // each in [0, m_i)
  bool operator==(const DualPoint&) const = default;
};

DualPoint canonical_dual_point(const GroupSpec& spec, std::vector<Rat> free,
                               std::vector<Int> torsion);

/**
 * Character evaluation gamma(x) as an exact torus point:
 * sum_k a_k*xi_k + sum_i b_i*y_i/m_i (mod 1).
 */
UnitRational eval_pair(const GroupSpec& spec, const Element& gamma,
                       const DualPoint& x);

/** Deterministic primality by trial division (desk-scale inputs). */
bool is_prime(const Int& n);

/** Factorization m = prod p_i^{e_i}, primes ascending. */
std::vector<std::pair<Int, unsigned>> factorize(const Int& m);

/**
 * CRT splitting of every torsion order into prime-power factors. Target
 * coordinate order: free coordinates first (unchanged), then torsion factors
 * grouped by prime ascending, within one prime by source coordinate order.
 */
struct PrimaryCoord {
  std::size_t source;  // index into source torsion coordinates
  Int prime;
  unsigned exponent = 0;
  Int modulus;   // prime^exponent
  Int crt_coeff; // CRT recombination coefficient mod source order
};

struct PrimaryDecomposition {
  GroupSpec source;
  GroupSpec target;
  std::vector<PrimaryCoord> coords;  // one per target torsion coordinate

  Element forward(const Element& e) const;
  Element inverse(const Element& e) const;
  /** Primes appearing in the target, ascending. */
  std::vector<Int> primes() const;
};

PrimaryDecomposition primary_decompose(const GroupSpec& spec);

}  // namespace npr
