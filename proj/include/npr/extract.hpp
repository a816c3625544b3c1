#pragma once

#include "npr/certify.hpp"
#include "npr/group.hpp"
#include "npr/structure.hpp"

#include <string>
#include <vector>

namespace npr {

/**
 * A certified extraction outcome. `claimed_modulus` is the N for which the
 * subset is certified N-PR; 0 means "every N" (the subset is independent with
 * trivial relation lattice). `kept_indices` point into the input set,
 * ascending; `trace` is an ordered human-readable log of the pipeline stages.
 */
struct ExtractionReport {
  bool free_marker = false;
  Int prime;            // claimed prime (or prime power) when !free_marker
  Int claimed_modulus;  // 0 = every N
  std::vector<std::size_t> kept_indices;
  ElementSet subset;
  NprCertificate certificate;
  std::vector<std::string> trace;
};

/**
 * Greedy staircase selection for sets of order-p elements in a p-group: an
 * element is kept when it has a coordinate where no previously kept element
 * is nontrivial. The kept subset is independent and p-PR. With
 * exhaustive = true (|E| <= 10) all input orderings are tried and the largest
 * kept set wins (ties to the lexicographically smallest index set).
 */
ExtractionReport staircase_extract(const ElementSet& e, const Int& p,
                                   bool exhaustive = false);

/**
 * Certified p-PR subset extraction in a p-group: order-class split, selection
 ** of the largest class, injectivity horizon n0 with discard of high-order
 * coordinates, staircase on the resulting order-p vectors, pullback, and a
 * final certified greedy augmentation over the remaining input elements.
 * The returned subset always carries a Holds certificate; no maximality claim.
 */
ExtractionReport extract_ppr(const ElementSet& e, const Int& p);

/**
 * Component scan for arbitrary finitely generated specs: the primary
 * component (or free part) with the largest mapped image is selected (ties:
 * smallest prime first, free part last) and the matching extraction runs on
 * the image, pulled back through first preimages.
 */
ExtractionReport extract_any(const ElementSet& e);

struct CardinalityDiagnostic {
  std::size_t set_size = 0;
  std::size_t image_size = 0;   // distinct images under the p^n quotient
  bool equal = false;           // necessary condition for a full-size p^n-PR subset
  ExtractionReport extraction;  // certified p^n-PR subset attempt
};

/**
 * Compares |image of E under the p^n quotient| with |E| (the finite-scale
 * necessary condition for a p^n-PR subset of full size) and attempts the
 * extraction through the quotient.
 */
CardinalityDiagnostic cardinality_diagnostic(const ElementSet& e, const Int& p,
                                             unsigned n);

struct ComposeComponent {
  ElementSet set;   // supported on the p-primary coordinates of the ambient spec
  Int prime;
  unsigned exponent = 1;
};

struct ComposeCheck {
  Int prime;
  bool injective = false;
  NprCertificate image_certificate;
};

struct ComposeResult {
  bool ok = false;
  Int modulus;  // prod p_i^{m_i}
  ElementSet set;
  std::vector<ComposeCheck> checks;  // the verification, one entry per prime
  std::string failure;               // non-empty when !ok
};

/**
 * Builds E = { J_1[j] + J_2[sigma_2(j)] + ... } from component sets at
 * pairwise distinct primes and certifies the product modulus through the
 * per-prime quotient checks. `pairings[i]` maps the position j in the first
 * component to the paired position in component i (identity when empty).
 */
ComposeResult compose_npr(const std::vector<ComposeComponent>& components,
                          const std::vector<std::vector<std::size_t>>& pairings = {});

struct MaxIndependentResult {
  std::vector<std::size_t> indices;
  ElementSet subset;
};

/**
 * Exhaustive maximum-cardinality independent subset (|E| <= 20), pruned by
 * monotonicity; ties break to the lexicographically smallest index set.
 * Identity elements are never part of an independent set and are skipped.
 */
MaxIndependentResult max_independent_subset(const ElementSet& e);

}  // namespace npr
