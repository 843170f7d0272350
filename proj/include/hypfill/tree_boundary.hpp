#ifndef HYPFILL_TREE_BOUNDARY_HPP
#define HYPFILL_TREE_BOUNDARY_HPP

#include "hypfill/filling.hpp"
#include "hypfill/generators.hpp"

namespace hypfill {

/// Boundary of a rooted tree whose leaves continue as infinite rays, under
/// the uniformized metric scaled by eps*tau/(2 alpha) with alpha = e^eps.
/// Boundary points are the leaves; two leaves with deepest common ancestor
/// at depth n sit at distance tau * alpha^{-n-1}. Requires 1 < tau < alpha.
struct TreeBoundary {
  FiniteMetricSpace space;  // one point per leaf, no rescaling applied
  std::vector<int> leaf_of_point;  // tree vertex id per point
};

TreeBoundary tree_boundary_space(const RootedTree& tree, double eps, double tau);

struct TreeRoundTripResult {
  bool isomorphic = false;
  int filling_vertices = 0;
  int tree_vertices = 0;  // of the leaf-extended tree, truncated alike
  std::string mismatch;   // empty when isomorphic
};

/// Builds the filling of tree_boundary_space(tree, eps, tau) and tests it
/// against the leaf-ray extension of the tree for a level-preserving graph
/// isomorphism (exact, per-edge).
TreeRoundTripResult tree_roundtrip_check(const RootedTree& tree, double eps,
                                         double tau);

}  // namespace hypfill

#endif
