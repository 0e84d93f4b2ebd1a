#pragma once

#include <vector>

#include "specflow/poly.hpp"

namespace specflow {

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian
/// algorithm with potentials, O(n^3)). Returns perm with row i assigned to
/// column perm[i].
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

/// Assignment matching points `from[i]` to `to[match[i]]`, minimizing total
/// distance. Sizes must agree.
std::vector<int> match_points(const std::vector<Complex>& from,
                              const std::vector<Complex>& to);

}  // namespace specflow
