#ifndef HYPFILL_NETS_HPP
#define HYPFILL_NETS_HPP

#include <vector>

#include "hypfill/metric_space.hpp"

namespace hypfill {

/// Nested hierarchy of maximal separated nets: level n is a maximal
/// alpha^{-n}-separated subset of the space, level 0 is the root alone,
/// and each level contains the previous one.
///
/// Construction is greedy: level n+1 starts from level n and scans the
/// remaining points in ascending index order, adding a point whenever it is
/// at distance >= alpha^{-(n+1)} from everything chosen so far. The greedy
/// order makes the hierarchy a deterministic function of the input.
struct NetHierarchy {
  double alpha = 2.0;
  int depth = 0;          // deepest constructed level
  int root = 0;           // the single point of level 0
  int isolation_level = 0;  // smallest n with alpha^{-n} <= min_sep
  std::vector<std::vector<int>> levels;  // levels[n] sorted ascending

  bool contains(int level, int point) const;
};

/// Builds the hierarchy down to max_depth. Levels at or past the isolation
/// level contain every point. Warn-level condition (max_depth below the
/// isolation level) is reported through the returned struct, not an error.
NetHierarchy build_nets(const FiniteMetricSpace& space, double alpha, int max_depth,
                        int root = 0);

/// Smallest n with alpha^{-n} <= min_sep (0 for a single point).
int isolation_level(const FiniteMetricSpace& space, double alpha);

}  // namespace hypfill

#endif
