#pragma once

#include <vector>

#include "orbitope/linalg.hpp"

namespace orbitope {

/// Outcome of an exact feasibility LP: either convex weights certifying
/// membership, or a rational separating functional (u, t) with
/// u.p + t > 0 and u.V_j + t <= 0 for every column point V_j.
struct LpFeasibility {
  bool feasible = false;
  std::vector<Rat> weights;
  std::vector<Rat> separator;       // length D
  Rat separator_offset;
};

/// Is `target` a convex combination of the columns of `points` (each column a
/// point in Q^D)? Exact phase-1 simplex with Bland's rule.
LpFeasibility exact_convex_membership(const std::vector<std::vector<Rat>>& points,
                                      const std::vector<Rat>& target);

}  // namespace orbitope
