#pragma once

#include "npr/group.hpp"
#include "npr/lattice.hpp"

#include <optional>
#include <vector>

namespace npr {

/**
 * Outcome of an N-PR check. When holds is false, `relation` is a nonzero
 * integer vector with sum_j relation_j * gamma_j = identity and
 * relation[index] not divisible by N — a machine-checkable refutation.
 */
struct NprCertificate {
  bool holds = false;
  Int modulus;                 // the N that was checked
  std::vector<Int> relation;   // empty when holds
  std::size_t index = 0;       // offending coordinate when !holds
};

/**
 * Outcome of an independence check. When holds is false, `relation` is a
 * relation sum_j relation_j * gamma_j = identity in which the component
 * relation[index] * gamma_index is itself not the identity.
 */
struct IndependenceCertificate {
  bool holds = false;
  std::vector<Int> relation;
  std::size_t index = 0;
};

/**
 * The largest g (as a gcd; 0 when L(E) is trivial) such that every relation
 * of E has all coefficients divisible by g. E is N-PR exactly when g == 0 or
 * N divides g.
 */
Int npr_modulus(const ElementSet& e);

/** Certified N-PR check (N >= 1; N = 1 holds vacuously). */
NprCertificate is_npr(const ElementSet& e, const Int& n);

/** Certified independence check; rejects sets containing the identity. */
IndependenceCertificate is_independent(const ElementSet& e);

/**
 * Translate of E by gamma. Precondition: the cyclic group generated by gamma
 * meets the subgroup generated by E only in the identity; violations raise a
 * precondition error naming the offending multiple k.
 */
ElementSet translate_set(const ElementSet& e, const Element& gamma);

struct InterpolationProblem {
  ElementSet set;
  Int modulus;               // N >= 1
  std::vector<Int> targets;  // c_j in [0, N), one per element
};

/**
 * Result of the exact interpolation solve. Exactly one branch is populated:
 * either a witness x with gamma_j(x) = c_j/N for every j, or an integer
 * combination m in L(E) with sum m_j c_j != 0 (mod N), certifying
 * infeasibility.
 */
struct InterpolationResult {
  bool feasible = false;
  DualPoint witness;
  std::vector<Int> infeasible_combination;
};

InterpolationResult interpolate(const InterpolationProblem& p);

}  // namespace npr
