#include "hypfill/filling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "hypfill/rng.hpp"

namespace hypfill {

int stabilization_level(const FiniteMetricSpace& space, double alpha, double tau) {
  if (space.size() == 1) return 0;
  int n = 0;
  while (2.0 * tau * std::pow(alpha, -n) > space.min_sep()) ++n;
  return n;
}

FillingGraph FillingGraph::build(FiniteMetricSpace space, NetHierarchy nets, double tau,
                                 int n_trunc, bool counterexample_mode) {
  if (counterexample_mode) {
    if (!(tau > 0.0 && tau <= 1.0))
      throw BadTau("counterexample mode covers 0 < tau <= 1");
  } else if (!(tau > 1.0)) {
    throw BadTau("tau must exceed 1 (or enable counterexample mode)");
  }
  int n_star = hypfill::stabilization_level(space, nets.alpha, tau);
  if (n_trunc < n_star) throw TruncationTooShallow(n_star);
  if (nets.depth < n_trunc)
    throw BadParams("net hierarchy shallower than requested truncation");

  FillingGraph g;
  g.space_ = std::move(space);
  g.nets_ = std::move(nets);
  g.tau_ = tau;
  g.counterexample_mode_ = counterexample_mode;
  g.n_star_ = n_star;
  g.n_trunc_ = n_trunc;
  g.l_ = -1;
  if (tau > 1.0) {
    int l = 0;
    while (std::pow(g.nets_.alpha, -l) > tau - 1.0) ++l;
    g.l_ = l;
  }

  const auto& Z = g.space_;
  const double alpha = g.nets_.alpha;
  int npts = Z.size();

  // Witness radii: wh(x,y) is the smallest max(d(z,x), d(z,y)) over points
  // z, so a horizontal pair at level n is adjacent iff wh < tau a^{-n}.
  // wv(x,y) = min over z of max(d(z,x), alpha d(z,y)) plays the same role
  // for a vertical pair with x one level above y.
  std::vector<double> wh(static_cast<std::size_t>(npts) * npts);
  std::vector<double> wv(static_cast<std::size_t>(npts) * npts);
  for (int x = 0; x < npts; ++x)
    for (int y = 0; y < npts; ++y) {
      double bh = std::numeric_limits<double>::infinity();
      double bv = bh;
      for (int z = 0; z < npts; ++z) {
        bh = std::min(bh, std::max(Z.dist(z, x), Z.dist(z, y)));
        bv = std::min(bv, std::max(Z.dist(z, x), alpha * Z.dist(z, y)));
      }
      wh[static_cast<std::size_t>(x) * npts + y] = bh;
      wv[static_cast<std::size_t>(x) * npts + y] = bv;
    }

  g.by_level_.resize(n_trunc + 1);
  g.level_offset_.resize(n_trunc + 2, 0);
  for (int n = 0; n <= n_trunc; ++n) {
    g.level_offset_[n] = static_cast<int>(g.verts_.size());
    for (int p : g.nets_.levels[n]) {
      g.by_level_[n].push_back(static_cast<int>(g.verts_.size()));
      g.verts_.push_back({p, n});
    }
  }
  g.level_offset_[n_trunc + 1] = static_cast<int>(g.verts_.size());
  g.adj_.resize(g.verts_.size());

  auto add_edge = [&](int u, int v, EdgeKind k) {
    g.adj_[u].push_back({v, k});
    g.adj_[v].push_back({u, k});
    g.edges_.push_back({std::min(u, v), std::max(u, v), k});
  };

  for (int n = 0; n <= n_trunc; ++n) {
    double radius = std::pow(alpha, -n);
    const auto& level = g.nets_.levels[n];
    int sz = static_cast<int>(level.size());
    for (int i = 0; i < sz; ++i)
      for (int j = i + 1; j < sz; ++j)
        if (wh[static_cast<std::size_t>(level[i]) * npts + level[j]] < tau * radius)
          add_edge(g.by_level_[n][i], g.by_level_[n][j], EdgeKind::Horizontal);
    if (n < n_trunc) {
      const auto& next = g.nets_.levels[n + 1];
      for (int i = 0; i < sz; ++i)
        for (int j = 0; j < static_cast<int>(next.size()); ++j)
          if (wv[static_cast<std::size_t>(level[i]) * npts + next[j]] < radius)
            add_edge(g.by_level_[n][i], g.by_level_[n + 1][j], EdgeKind::Vertical);
    }
  }

  g.entry_.assign(npts, n_trunc);
  for (int n = n_trunc; n >= 0; --n)
    for (int p : g.nets_.levels[n]) g.entry_[p] = n;

  g.last_busy_.assign(npts, 0);
  for (int p = 0; p < npts; ++p) g.last_busy_[p] = g.entry_[p];
  for (const Edge& e : g.edges_) {
    const Vertex &a = g.verts_[e.u], &b = g.verts_[e.v];
    if (a.point == b.point) continue;  // own-ray edges do not count as busy
    g.last_busy_[a.point] = std::max(g.last_busy_[a.point], a.level);
    g.last_busy_[b.point] = std::max(g.last_busy_[b.point], b.level);
  }
  return g;
}

bool FillingGraph::has_vertex(int point, int level) const {
  return level >= 0 && level <= n_trunc_ && nets_.contains(level, point);
}

int FillingGraph::vertex_id(int point, int level) const {
  if (level < 0 || level > n_trunc_) throw UnknownVertex();
  const auto& a = nets_.levels[level];
  auto it = std::lower_bound(a.begin(), a.end(), point);
  if (it == a.end() || *it != point) throw UnknownVertex();
  return level_offset_[level] + static_cast<int>(it - a.begin());
}

std::vector<int> FillingGraph::bfs_distances(int src) const {
  std::vector<int> dist(verts_.size(), -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto [y, k] : adj_[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
  }
  return dist;
}

int graph_distance(const FillingGraph& g, const Vertex& v, const Vertex& w) {
  int a = g.vertex_id(v), b = g.vertex_id(w);
  return g.bfs_distances(a)[b];
}

int gromov_product_x2(const FillingGraph& g, const Vertex& v, const Vertex& w) {
  return v.level + w.level - graph_distance(g, v, w);
}

double gromov_product(const FillingGraph& g, const Vertex& v, const Vertex& w) {
  return 0.5 * gromov_product_x2(g, v, w);
}

namespace {

// Max over u of min(pv[u], pw[u]); int16 values keep the loop vectorizable.
int max_min_scan(const std::int16_t* pv, const std::int16_t* pw, int n) {
  std::int16_t best = std::numeric_limits<std::int16_t>::min();
  for (int i = 0; i < n; ++i) {
    std::int16_t m = std::min(pv[i], pw[i]);
    best = std::max(best, m);
  }
  return best;
}

}  // namespace

HyperbolicityResult hyperbolicity_constant(const FillingGraph& g, int cap,
                                           std::uint64_t seed) {
  // Gromov products are unchanged when a vertex slides down its stabilized
  // ray, and same-ray pairs are dominated by their collapsed versions, so
  // the triple maximum over the collapsed set equals the full maximum.
  std::vector<int> ids;
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    if (v.level <= g.last_busy_level(v.point)) ids.push_back(id);
  }

  HyperbolicityResult res;
  bool exhaustive = static_cast<int>(ids.size()) <= cap;
  if (!exhaustive) {
    Rng rng(seed);
    std::vector<int> sample;
    sample.reserve(cap);
    for (int i = 0; i < cap; ++i)
      sample.push_back(static_cast<int>(rng.uniform_int(g.vertex_count())));
    std::sort(sample.begin(), sample.end());
    sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
    ids = std::move(sample);
  }
  res.exhaustive = exhaustive;
  int n = static_cast<int>(ids.size());
  res.scanned_vertices = n;
  if (n == 0) return res;

  // Twice the Gromov product of every scanned pair.
  std::vector<std::int16_t> prod(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    auto dist = g.bfs_distances(ids[i]);
    const Vertex& vi = g.vertex(ids[i]);
    for (int j = 0; j < n; ++j) {
      const Vertex& vj = g.vertex(ids[j]);
      prod[static_cast<std::size_t>(i) * n + j] =
          static_cast<std::int16_t>(vi.level + vj.level - dist[ids[j]]);
    }
  }

  int best = std::numeric_limits<int>::min();
  int bi = 0, bj = 0, bu = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int m = max_min_scan(&prod[static_cast<std::size_t>(i) * n],
                           &prod[static_cast<std::size_t>(j) * n], n);
      int val = m - prod[static_cast<std::size_t>(i) * n + j];
      if (val > best) {
        best = val;
        bi = i;
        bj = j;
        // Recover a maximizing u for the witness.
        for (int u = 0; u < n; ++u)
          if (std::min(prod[static_cast<std::size_t>(i) * n + u],
                       prod[static_cast<std::size_t>(j) * n + u]) == m) {
            bu = u;
            break;
          }
      }
    }
  res.constant = 0.5 * best;
  res.witness_v = g.vertex(ids[bi]);
  res.witness_w = g.vertex(ids[bj]);
  res.witness_u = g.vertex(ids[bu]);
  return res;
}

ProductComparisonResult product_comparison_check(const FillingGraph& g) {
  if (!(g.tau() > 1.0)) throw BadTau("product comparison requires tau > 1");
  const double alpha = g.alpha(), tau = g.tau();
  ProductComparisonResult res;
  res.lower_bound = (alpha - 1.0) / (4.0 * tau * alpha);
  res.upper_bound = std::pow(alpha, g.ball_overlap_level() + 1.5);
  res.observed_min = std::numeric_limits<double>::infinity();
  res.observed_max = 0.0;

  int V = g.vertex_count();
  for (int i = 0; i < V; ++i) {
    auto dist = g.bfs_distances(i);
    const Vertex& v = g.vertex(i);
    for (int j = i; j < V; ++j) {
      const Vertex& w = g.vertex(j);
      double prod = 0.5 * (v.level + w.level - dist[j]);
      double denom = g.space().dist(v.point, w.point) +
                     std::pow(alpha, -v.level) + std::pow(alpha, -w.level);
      double r = std::pow(alpha, -prod) / denom;
      res.observed_min = std::min(res.observed_min, r);
      res.observed_max = std::max(res.observed_max, r);
    }
  }
  const double slack = 1e-12;
  res.max_violation =
      std::max({0.0, res.observed_max - res.upper_bound * (1.0 + slack),
                res.lower_bound * (1.0 - slack) - res.observed_min});
  if (res.max_violation > 0.0)
    throw BoundViolation("Gromov product comparison bracket violated");
  return res;
}

DegreeStats degree_stats(const FillingGraph& g) {
  DegreeStats s;
  s.per_level_max.assign(g.truncation_level() + 1, 0);
  for (int id = 0; id < g.vertex_count(); ++id) {
    int d = g.degree(id);
    s.max_degree = std::max(s.max_degree, d);
    int lv = g.vertex(id).level;
    s.per_level_max[lv] = std::max(s.per_level_max[lv], d);
    if (d >= static_cast<int>(s.histogram.size())) s.histogram.resize(d + 1, 0);
    ++s.histogram[d];
  }
  return s;
}

}  // namespace hypfill
