#pragma once

#include "npr/certify.hpp"
#include "npr/group.hpp"

#include <cstdint>
#include <vector>

namespace npr {

/**
 * Enumeration budget (number of evaluation points, i.e. candidate-function
 * count times group order). 0 means "use the NPR_MAX_ENUM environment
 * variable, default 1e6".
 */
std::uint64_t enumeration_budget(std::uint64_t requested);

/**
 * Ground-truth N-PR check by exhaustive enumeration: every map E -> Z_N must
 * be a point evaluation. Requires a rank-0 spec and N^|E| * |G| within the
 * budget. Production kernel: modular int64 arithmetic, OpenMP over the
 * candidate functions, deterministic AND-reduction.
 */
bool brute_force_check(const ElementSet& e, const Int& n,
                       std::uint64_t max_points = 0);

/** Serial reference for the above: exact rationals via eval_pair, no tables. */
bool brute_force_check_serial(const ElementSet& e, const Int& n,
                              std::uint64_t max_points = 0);

struct KroneckerEstimate {
  double epsilon = 0.0;         // chord length 2*sin(pi * worst_distance)
  Rat worst_distance;           // exact max-min-max circular distance
  Int grid;                     // M
  std::vector<Int> worst_phi;   // maximizing grid function, entries in [0, M)
};

/**
 * Exhaustive weak epsilon-Kronecker estimate over the M-th-roots grid:
 * max over phi in (Z_M)^E of min over x in G of max over gamma of the chord
 * distance |phi(gamma) - gamma(x)|. Distances are compared exactly; the only
 * float is the reported epsilon. Ties in the maximizing phi break to the
 * lexicographically smallest index vector. Requires rank 0 and
 * M^|E| * |G| within the budget.
 */
KroneckerEstimate weak_kronecker_eps(const ElementSet& e, const Int& m,
                                     std::uint64_t max_points = 0);

/** Serial exact-rational reference for weak_kronecker_eps. */
KroneckerEstimate weak_kronecker_eps_serial(const ElementSet& e, const Int& m,
                                            std::uint64_t max_points = 0);

}  // namespace npr
