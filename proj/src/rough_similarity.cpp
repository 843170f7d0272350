#include "hypfill/rough_similarity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "hypfill/rng.hpp"

namespace hypfill {

RoughSimilarityReport rough_similarity(const UniformizedFilling& source,
                                       double alpha_hat, double tau_hat,
                                       long long pair_cap, std::uint64_t seed) {
  if (!(alpha_hat > 1.0)) throw BadParams("alpha_hat must exceed 1");
  const FillingGraph& sg = source.graph();
  const double eps = source.eps();
  const double log_ah = std::log(alpha_hat);

  // Target boundary space: uniformized boundary rescaled by eps/e.
  BoundarySpace bm = boundary_metric(source);
  double scale = eps / std::exp(1.0);
  FiniteMetricSpace zhat = bm.to_metric_space(scale);
  if (zhat.size() > 1 && zhat.diam() >= 1.0)
    throw ScaleMismatch("scaled boundary diameter must be below 1");

  int depth = stabilization_level(zhat, alpha_hat, tau_hat) + 2;
  NetHierarchy nets = build_nets(zhat, alpha_hat, depth);
  FillingGraph target = FillingGraph::build(zhat, nets, tau_hat, depth);

  // Scaled distance from every source vertex to every boundary point.
  int V = sg.vertex_count(), B = sg.space().size();
  std::vector<std::vector<double>> to_bdry(B);
  for (int p = 0; p < B; ++p) to_bdry[p] = source.dijkstra(source.boundary_node(p));

  // Image of each source vertex: (point, level) in the infinite target.
  std::vector<Vertex> image(V);
  for (int i = 0; i < V; ++i) {
    double dhat = std::exp(-eps * sg.vertex(i).level - 1.0);
    int n = static_cast<int>(std::floor(-std::log(dhat) / log_ah + 1e-12));
    n = std::max(n, 0);
    const auto& net =
        nets.levels[std::min<int>(n, static_cast<int>(nets.levels.size()) - 1)];
    int best = net[0];
    double best_d = std::numeric_limits<double>::infinity();
    for (int q : net) {
      double d = scale * to_bdry[q][i];
      if (d < best_d) {
        best_d = d;
        best = q;
      }
    }
    image[i] = {best, n};
  }

  // Exact infinite-graph distance in the target between (z,n) and (y,m):
  // clamp to the truncation and pay the ray excess (levels at and past
  // stabilization carry only rays).
  int t_trunc = target.truncation_level();
  std::vector<std::vector<int>> bfs_cache(target.vertex_count());
  auto target_dist = [&](const Vertex& a, const Vertex& b) -> int {
    if (a.point == b.point) return std::abs(a.level - b.level);
    int na = std::min(a.level, t_trunc), nb = std::min(b.level, t_trunc);
    int ia = target.vertex_id(a.point, na), ib = target.vertex_id(b.point, nb);
    if (bfs_cache[ia].empty()) bfs_cache[ia] = target.bfs_distances(ia);
    return (a.level - na) + (b.level - nb) + bfs_cache[ia][ib];
  };

  RoughSimilarityReport rep;
  rep.slope = log_ah / eps;

  long long total = static_cast<long long>(V) * (V - 1) / 2;
  bool all_pairs = total <= pair_cap;
  auto consider = [&](int i, int j, int dx) {
    double diff = target_dist(image[i], image[j]) - rep.slope * dx;
    rep.best_c = std::max(rep.best_c, std::abs(diff));
    ++rep.pairs;
  };
  if (all_pairs) {
    for (int i = 0; i < V; ++i) {
      auto bfs = sg.bfs_distances(i);
      for (int j = i + 1; j < V; ++j) consider(i, j, bfs[j]);
    }
  } else {
    Rng rng(seed);
    for (long long s = 0; s < pair_cap; ++s) {
      int i = static_cast<int>(rng.uniform_int(V));
      int j = static_cast<int>(rng.uniform_int(V));
      if (i == j) continue;
      auto bfs = sg.bfs_distances(i);
      consider(i, j, bfs[j]);
    }
  }

  // Coverage: multi-source BFS in the truncated target from the image set.
  std::vector<int> cov(target.vertex_count(), -1);
  std::deque<int> q;
  for (int i = 0; i < V; ++i) {
    int id = target.vertex_id(image[i].point, std::min(image[i].level, t_trunc));
    if (cov[id] < 0) {
      cov[id] = 0;
      q.push_back(id);
    }
  }
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto [y, k] : target.neighbors(x))
      if (cov[y] < 0) {
        cov[y] = cov[x] + 1;
        q.push_back(y);
      }
  }
  for (int id = 0; id < target.vertex_count(); ++id)
    rep.coverage_c = std::max(rep.coverage_c, static_cast<double>(cov[id]));
  return rep;
}

}  // namespace hypfill
