#pragma once

#include "npr/group.hpp"
#include "npr/intmat.hpp"

namespace npr {

/**
 * The lattice L(E) = { m in Z^s : sum_j m_j gamma_j = 0 } of integer
 * relations of an element list, held as an HNF-reduced row basis (possibly
 * with zero rows removed; 0 x s when only the trivial relation exists).
 */
struct RelationLattice {
  std::size_t set_size = 0;
  IntMatrix basis;  // rows: basis relations, cols = set_size
};

/**
 * Coordinate matrix of the defining system: columns are the s elements
 * followed by the torsion slack block, rows are the rank + t coordinates.
 *   [ A_free    0 ]
 *   [ A_torsion D ]      D = diag(m_1 ... m_t)
 * A vector (m, k) lies in its kernel iff sum m_j gamma_j = 0 in the group.
 */
IntMatrix embedding_matrix(const ElementSet& e);

RelationLattice relation_lattice(const ElementSet& e);

}  // namespace npr
