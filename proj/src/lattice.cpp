#include "npr/lattice.hpp"

namespace npr {

IntMatrix embedding_matrix(const ElementSet& e) {
  const GroupSpec& spec = e.spec;
  const std::size_t s = e.size();
  const std::size_t t = spec.torsion.size();
  IntMatrix b(spec.rank + t, s + t);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t c = 0; c < spec.coord_count(); ++c)
      b.at(c, j) = e.elements[j].coords[c];
  for (std::size_t i = 0; i < t; ++i) b.at(spec.rank + i, s + i) = spec.torsion[i];
  return b;
}

RelationLattice relation_lattice(const ElementSet& e) {
  const std::size_t s = e.size();
  IntMatrix kernel = integer_kernel(embedding_matrix(e));
  // Project kernel rows onto the relation coordinates and re-canonicalize;
  // rows that lived purely in the slack block project to zero and are dropped.
  IntMatrix proj = kernel.slice(0, kernel.rows(), s);
  HnfResult canon = hnf(proj);
  std::size_t keep = 0;
  for (std::size_t i = 0; i < canon.h.rows(); ++i)
    if (!canon.h.row_is_zero(i)) ++keep;
  return RelationLattice{s, canon.h.slice(0, keep, s)};
}

}  // namespace npr
