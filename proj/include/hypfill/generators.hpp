#ifndef HYPFILL_GENERATORS_HPP
#define HYPFILL_GENERATORS_HPP

#include <cstdint>
#include <vector>

#include "hypfill/metric_space.hpp"

namespace hypfill {

/// Rooted tree given by a parent array; parent[root] = -1. Vertex 0 is the
/// root. Edges all have unit length.
struct RootedTree {
  std::vector<int> parent;
  int size() const { return static_cast<int>(parent.size()); }
  int depth(int v) const;
  std::vector<int> leaves() const;
  /// Depth of the deepest common ancestor.
  int lca_depth(int a, int b) const;
};

/// k uniformly spaced points on a segment, rescaled to diameter 1/2:
/// interval_net(5) = {0, 1/8, 1/4, 3/8, 1/2}.
FiniteMetricSpace interval_net(int k);

/// k^dim lattice points of a dim-dimensional unit cube, rescaled to
/// diameter 1/2.
FiniteMetricSpace grid(int dim, int k);

/// Endpoint set of the depth-step Cantor construction with contraction
/// `ratio` (each interval keeps its first and last ratio-fraction): the
/// 2^depth left endpoints sum_i b_i (1-ratio) ratio^{i-1}, rescaled to
/// diameter 1/2.
FiniteMetricSpace cantor(int depth, double ratio = 1.0 / 3.0);

/// One slit: [0, 1/4-rho] union [1/4+rho, 1/2] sampled on a 2^{-(n+2)}
/// grid together with the two slit endpoints. Requires n >= 3 and
/// 0 < rho < 2^{-n-1}. Points are ordered coarse-dyadic first so that the
/// greedy nets reproduce the dyadic structure around the gap.
FiniteMetricSpace slit_example(int n, double rho);

/// Iterated slit gluing: one slit per entry of `depths` (each >= 3,
/// nondecreasing), each living at the scale of the previous slit's bottom.
/// The sample keeps, per slit, the dyadic cascade flanking the gap plus the
/// two gap endpoints; this is the minimal point set realizing the two long
/// separated branches around each slit. Ordered coarse-dyadic first.
FiniteMetricSpace slit_family(const std::vector<int>& depths);

/// Snowflake transform d -> d^exponent of a base space, exponent in (0,1],
/// rescaled to target diameter.
FiniteMetricSpace snowflake(const FiniteMetricSpace& base, double exponent,
                            double target_diam = 0.5);

/// Seeded random rooted tree with at most max_vertices vertices and
/// 1..max_children children per expanded vertex.
RootedTree random_tree(int max_vertices, int max_children, std::uint64_t seed);

}  // namespace hypfill

#endif
