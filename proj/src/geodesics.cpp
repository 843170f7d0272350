#include "hypfill/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>

namespace hypfill {

void GeodesicReport::require_clean() const {
  if (!all_passed()) throw LemmaViolation("geodesic structure check failed");
}

int horizontal_geodesic_bound_n0(double alpha) {
  int n = 1;
  while (n * std::pow(alpha, 1.0 - n) > 1.0 / (alpha + 1.0)) ++n;
  return n;
}

bool has_interior_level_max(const std::vector<int>& levels) {
  int m = static_cast<int>(levels.size());
  if (m < 3) return false;
  std::vector<int> suffix_min(m);
  suffix_min[m - 1] = levels[m - 1];
  for (int k = m - 2; k >= 0; --k)
    suffix_min[k] = std::min(levels[k], suffix_min[k + 1]);
  int prefix_min = levels[0];
  for (int j = 1; j + 1 < m; ++j) {
    if (prefix_min < levels[j] && suffix_min[j + 1] < levels[j]) return true;
    prefix_min = std::min(prefix_min, levels[j]);
  }
  return false;
}

namespace {

struct PathChecker {
  const FillingGraph& g;
  int two_n0;
  GeodesicReport& rep;

  // Returns false on the first violation so enumeration can stop recording.
  void check(const std::vector<int>& path) {
    ++rep.geodesics_checked;
    int m = static_cast<int>(path.size());
    auto lv = [&](int i) { return g.vertex(path[i]).level; };
    auto pt = [&](int i) { return g.vertex(path[i]).point; };

    bool bad = false;
    for (int i = 0; i + 2 < m && !bad; ++i)
      if (lv(i + 1) == lv(i) + 1 && lv(i + 2) == lv(i) && pt(i) != pt(i + 2)) {
        rep.no_spike = false;
        bad = true;
      }
    for (int i = 0; i + 3 < m && !bad; ++i)
      if (lv(i + 1) == lv(i) + 1 && lv(i + 2) == lv(i) + 1 && lv(i + 3) == lv(i) &&
          pt(i) != pt(i + 3)) {
        rep.no_ladder = false;
        bad = true;
      }
    if (!bad) {
      std::vector<int> levels(m);
      for (int i = 0; i < m; ++i) levels[i] = lv(i);
      if (has_interior_level_max(levels)) {
        rep.no_down_up = false;
        bad = true;
      }
    }
    int run = 0;
    for (int i = 0; i + 1 < m && !bad; ++i) {
      run = (lv(i + 1) == lv(i)) ? run + 1 : 0;
      if (run >= two_n0) {
        rep.horizontal_bounded = false;
        bad = true;
      }
    }
    if (bad) {
      std::vector<Vertex> w;
      w.reserve(m);
      for (int id : path) w.push_back(g.vertex(id));
      rep.witnesses.push_back(std::move(w));
    }
  }
};

// Does a geodesic of shape descend* / horizontal^{<=max_h} / ascend* of
// length `target` exist from a to b? Layered BFS over (vertex, phase,
// horizontal-steps); phases only move forward.
bool normal_form_geodesic_exists(const FillingGraph& g, int a, int b, int target,
                                 int max_h) {
  int V = g.vertex_count();
  const Vertex& va = g.vertex(a);
  const Vertex& vb = g.vertex(b);
  // Plateau level h: path descends from va.level to h, walks, ascends to
  // vb.level; total length is fixed by h and the horizontal count.
  for (int h = std::min(va.level, vb.level); h >= 0; --h) {
    int vertical = (va.level - h) + (vb.level - h);
    int hor = target - vertical;
    if (hor < 0 || hor > max_h) continue;
    // Reach: which level-h vertices are reachable from a by exactly
    // va.level-h strictly descending steps, resp. from b.
    auto descend_set = [&](int src, int steps) {
      std::vector<char> cur(V, 0);
      cur[src] = 1;
      for (int s = 0; s < steps; ++s) {
        std::vector<char> nxt(V, 0);
        int lv = g.vertex(src).level - s;
        for (int id = 0; id < V; ++id)
          if (cur[id])
            for (auto [nb, k] : g.neighbors(id))
              if (g.vertex(nb).level == lv - 1) nxt[nb] = 1;
        cur = std::move(nxt);
      }
      return cur;
    };
    auto from_a = descend_set(a, va.level - h);
    auto from_b = descend_set(b, vb.level - h);
    // Walk `hor` horizontal steps at level h from from_a and intersect.
    std::vector<char> cur = from_a;
    for (int s = 0; s < hor; ++s) {
      std::vector<char> nxt(V, 0);
      for (int id = 0; id < V; ++id)
        if (cur[id])
          for (auto [nb, k] : g.neighbors(id))
            if (k == EdgeKind::Horizontal && g.vertex(nb).level == h) nxt[nb] = 1;
      cur = std::move(nxt);
    }
    for (int id = 0; id < V; ++id)
      if (cur[id] && from_b[id]) return true;
  }
  return false;
}

}  // namespace

GeodesicReport geodesic_structure_check(const FillingGraph& g, int level_budget,
                                        long long per_pair_cap) {
  double alpha = g.alpha();
  double tau_min = (alpha + 1.0) / (alpha - 1.0);
  if (g.tau() < tau_min * (1.0 - 1e-12))
    throw NotInRegime("geodesic structure needs tau >= (alpha+1)/(alpha-1)");

  GeodesicReport rep;
  rep.n0 = horizontal_geodesic_bound_n0(alpha);
  if (level_budget < 0) level_budget = g.truncation_level();
  PathChecker checker{g, 2 * rep.n0, rep};

  int V = g.vertex_count();
  for (int a = 0; a < V; ++a) {
    if (g.vertex(a).level > level_budget) continue;
    auto dist = g.bfs_distances(a);
    for (int b = a + 1; b < V; ++b) {
      if (g.vertex(b).level > level_budget) continue;
      ++rep.pairs_checked;

      // Enumerate all geodesics from a to b through the predecessor DAG.
      long long emitted = 0;
      bool capped = false;
      std::vector<int> path{b};
      std::function<void(int)> dfs = [&](int x) {
        if (capped) return;
        if (x == a) {
          std::vector<int> fwd(path.rbegin(), path.rend());
          checker.check(fwd);
          if (++emitted >= per_pair_cap) capped = true;
          return;
        }
        for (auto [y, k] : g.neighbors(x)) {
          if (dist[y] != dist[x] - 1) continue;
          path.push_back(y);
          dfs(y);
          path.pop_back();
          if (capped) return;
        }
      };
      dfs(b);
      if (capped) ++rep.capped_pairs;

      if (!normal_form_geodesic_exists(g, a, b, dist[b], 2 * rep.n0 - 1))
        rep.normal_form_exists = false;
    }
  }
  return rep;
}

}  // namespace hypfill
