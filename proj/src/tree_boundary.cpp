#include "hypfill/tree_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hypfill {

TreeBoundary tree_boundary_space(const RootedTree& tree, double eps, double tau) {
  if (!(eps > 0.0)) throw BadParams("eps must be positive");
  double alpha = std::exp(eps);
  if (!(tau > 1.0 && tau < alpha))
    throw BadParams("tree boundary requires 1 < tau < alpha = e^eps");

  std::vector<int> leaves = tree.leaves();
  int n = static_cast<int>(leaves.size());
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back("leaf" + std::to_string(leaves[i]));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int lca = tree.lca_depth(leaves[i], leaves[j]);
      double v = tau * std::pow(alpha, -(lca + 1));
      d[static_cast<std::size_t>(i) * n + j] = v;
      d[static_cast<std::size_t>(j) * n + i] = v;
    }
  TreeBoundary out;
  out.space = FiniteMetricSpace::from_matrix_no_rescale(std::move(d), n, labels);
  out.leaf_of_point = std::move(leaves);
  return out;
}

TreeRoundTripResult tree_roundtrip_check(const RootedTree& tree, double eps,
                                         double tau) {
  TreeRoundTripResult res;
  double alpha = std::exp(eps);
  TreeBoundary tb = tree_boundary_space(tree, eps, tau);

  int n_star = stabilization_level(tb.space, alpha, tau);
  int depth = n_star + 2;
  NetHierarchy nets = build_nets(tb.space, alpha, depth);
  FillingGraph filling = FillingGraph::build(tb.space, nets, tau, depth);
  res.filling_vertices = filling.vertex_count();

  // The reference graph: tree vertices by depth, leaves extended by a
  // single ray below their depth, truncated at the same level.
  int nleaves = tb.space.size();
  std::vector<int> leaf_depth(nleaves);
  for (int p = 0; p < nleaves; ++p) leaf_depth[p] = tree.depth(tb.leaf_of_point[p]);

  // anc[p][n]: the tree ancestor of leaf p at depth n (n <= leaf_depth[p]).
  std::vector<std::vector<int>> anc(nleaves);
  for (int p = 0; p < nleaves; ++p) {
    int v = tb.leaf_of_point[p];
    std::vector<int> chain{v};
    while (tree.parent[v] >= 0) {
      v = tree.parent[v];
      chain.push_back(v);
    }
    std::reverse(chain.begin(), chain.end());
    anc[p] = std::move(chain);
  }

  // Reference vertex at level n for leaf p: ancestor at depth min(n, depth).
  auto ref_of = [&](int p, int n) {
    return std::pair<int, int>(anc[p][std::min<int>(n, leaf_depth[p])],
                               std::min<int>(n, leaf_depth[p]));
  };

  long long tree_count = 0;
  for (int n = 0; n <= depth; ++n) {
    // Reference level-n set: tree vertices at depth n plus shallower leaves.
    std::map<std::pair<int, int>, int> seen;
    for (int v = 0; v < tree.size(); ++v)
      if (tree.depth(v) == n) seen[{v, n}] = 0;
    for (int p = 0; p < nleaves; ++p)
      if (leaf_depth[p] < n) seen[{tb.leaf_of_point[p], leaf_depth[p]}] = 0;
    tree_count += static_cast<long long>(seen.size());

    const auto& level = filling.level_vertices(n);
    if (level.size() != seen.size()) {
      res.mismatch = "level " + std::to_string(n) + " cardinality differs";
      return res;
    }
    for (int id : level) {
      auto key = ref_of(filling.vertex(id).point, n);
      auto it = seen.find(key);
      if (it == seen.end() || ++it->second > 1) {
        res.mismatch = "level " + std::to_string(n) + " map not bijective";
        return res;
      }
    }
  }
  res.tree_vertices = static_cast<int>(tree_count);

  for (const Edge& e : filling.edges()) {
    const Vertex &a = filling.vertex(e.u), &b = filling.vertex(e.v);
    if (e.kind == EdgeKind::Horizontal) {
      res.mismatch = "unexpected horizontal edge";
      return res;
    }
    auto ra = ref_of(a.point, a.level), rb = ref_of(b.point, b.level);
    bool ray_edge = ra == rb;  // same leaf pinned at its depth
    bool tree_edge =
        rb.second == ra.second + 1 && tree.parent[rb.first] == ra.first;
    if (!ray_edge && !tree_edge) {
      res.mismatch = "edge not matched in tree";
      return res;
    }
  }

  // Edge counts must also match: the reference graph is a tree on its
  // vertex set plus rays, so it has (count - 1) edges up to truncation.
  long long expect_edges = tree_count - 1;
  if (static_cast<long long>(filling.edges().size()) != expect_edges) {
    res.mismatch = "edge count differs";
    return res;
  }
  res.isomorphic = true;
  return res;
}

}  // namespace hypfill
