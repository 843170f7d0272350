#include "hypfill/uniformize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "hypfill/rng.hpp"

namespace hypfill {

double EdgeGeom::length() const {
  if (kind == EdgeKind::Vertical)
    return std::exp(-eps * level) * (1.0 - std::exp(-eps)) / eps;
  return 2.0 * std::exp(-eps * level) * (1.0 - std::exp(-eps / 2.0)) / eps;
}

double EdgeGeom::arc(double t) const {
  double a = std::exp(-eps * level) / eps;
  if (kind == EdgeKind::Vertical || t <= 0.5) return a * (1.0 - std::exp(-eps * t));
  return length() - a * (1.0 - std::exp(-eps * (1.0 - t)));
}

double EdgeGeom::t_at_arc(double s) const {
  double a = std::exp(-eps * level) / eps;
  double len = length();
  s = std::clamp(s, 0.0, len);
  if (kind == EdgeKind::Vertical)
    return std::clamp(-std::log1p(-s / a) / eps, 0.0, 1.0);
  if (s <= len / 2.0) return std::clamp(-std::log1p(-s / a) / eps, 0.0, 0.5);
  return std::clamp(1.0 + std::log1p(-(len - s) / a) / eps, 0.5, 1.0);
}

double EdgeGeom::arc_integral(double t0, double t1) const {
  double a = std::exp(-eps * level) / eps;
  if (kind == EdgeKind::Vertical)
    return a * ((t1 - t0) + (std::exp(-eps * t1) - std::exp(-eps * t0)) / eps);
  auto lower_part = [&](double u0, double u1) {  // integral over [u0,u1] <= 1/2
    return a * ((u1 - u0) + (std::exp(-eps * u1) - std::exp(-eps * u0)) / eps);
  };
  auto upper_part = [&](double u0, double u1) {  // integral over [u0,u1] >= 1/2
    double len = length();
    return len * (u1 - u0) -
           a * ((u1 - u0) - (std::exp(-eps * (1.0 - u1)) - std::exp(-eps * (1.0 - u0))) / eps);
  };
  if (t1 <= 0.5) return lower_part(t0, t1);
  if (t0 >= 0.5) return upper_part(t0, t1);
  return lower_part(t0, 0.5) + upper_part(0.5, t1);
}

UniformizedFilling UniformizedFilling::build(FillingGraph graph, double eps,
                                             bool collapse_mode) {
  if (!(eps > 0.0)) throw EpsOutOfRange("eps must be positive");
  double log_alpha = std::log(graph.alpha());
  if (eps > log_alpha * (1.0 + 1e-12) && !collapse_mode)
    throw EpsOutOfRange("eps > log(alpha) requires the collapse flag");

  UniformizedFilling u;
  u.graph_ = std::move(graph);
  u.eps_ = eps;
  u.sigma_ = eps / log_alpha;
  u.collapse_mode_ = collapse_mode;
  u.tail_weight_ = std::exp(-eps * u.graph_.truncation_level()) / eps;

  const auto& edges = u.graph_.edges();
  u.edge_len_.resize(edges.size());
  u.wadj_.resize(u.node_count());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    u.edge_len_[i] = u.edge_geom(static_cast<int>(i)).length();
    u.wadj_[edges[i].u].push_back({edges[i].v, u.edge_len_[i]});
    u.wadj_[edges[i].v].push_back({edges[i].u, u.edge_len_[i]});
  }
  for (int p = 0; p < u.graph_.space().size(); ++p) {
    int bottom = u.graph_.vertex_id(p, u.graph_.truncation_level());
    int b = u.boundary_node(p);
    u.wadj_[bottom].push_back({b, u.tail_weight_});
    u.wadj_[b].push_back({bottom, u.tail_weight_});
  }
  return u;
}

EdgeGeom UniformizedFilling::edge_geom(int edge_index) const {
  const Edge& e = graph_.edges()[edge_index];
  return EdgeGeom{e.kind, graph_.vertex(e.u).level, eps_};
}

double UniformizedFilling::whitney(int vertex_id) const {
  return std::exp(-eps_ * graph_.vertex(vertex_id).level) / eps_;
}

std::string UniformizedFilling::node_label(int node) const {
  if (is_boundary(node))
    return "bdry:" + graph_.space().label(boundary_point(node));
  const Vertex& v = graph_.vertex(node);
  return graph_.space().label(v.point) + "@" + std::to_string(v.level);
}

std::vector<double> UniformizedFilling::dijkstra(int src) const {
  std::vector<double> dist(node_count(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x]) continue;
    for (auto [y, w] : wadj_[x])
      if (d + w < dist[y]) {
        dist[y] = d + w;
        pq.push({dist[y], y});
      }
  }
  return dist;
}

std::vector<double> UniformizedFilling::dijkstra_from_edge_point(int edge_index,
                                                                 double t) const {
  const Edge& e = graph_.edges()[edge_index];
  EdgeGeom geom = edge_geom(edge_index);
  double su = geom.arc(t), sv = geom.length() - su;

  std::vector<double> dist(node_count(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[e.u] = su;
  dist[e.v] = sv;
  pq.push({su, e.u});
  pq.push({sv, e.v});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x]) continue;
    for (auto [y, w] : wadj_[x])
      if (d + w < dist[y]) {
        dist[y] = d + w;
        pq.push({dist[y], y});
      }
  }
  return dist;
}

double UniformizedFilling::d_eps(int a, int b) const {
  if (a < 0 || b < 0 || a >= node_count() || b >= node_count()) throw UnknownNode();
  if (a == b) return 0.0;
  return dijkstra(a)[b];
}

FiniteMetricSpace BoundarySpace::to_metric_space(double scale) const {
  std::vector<double> d(dist);
  for (double& v : d) v *= scale;
  return FiniteMetricSpace::from_matrix_no_rescale(std::move(d), n, labels);
}

BoundarySpace boundary_metric(const UniformizedFilling& u) {
  int npts = u.graph().space().size();
  BoundarySpace b;
  b.n = npts;
  b.dist.assign(static_cast<std::size_t>(npts) * npts, 0.0);
  for (int p = 0; p < npts; ++p) {
    b.labels.push_back(u.graph().space().label(p));
    auto dist = u.dijkstra(u.boundary_node(p));
    for (int q = 0; q < npts; ++q)
      b.dist[static_cast<std::size_t>(p) * npts + q] = dist[u.boundary_node(q)];
  }
  // Symmetrize away the last floating-point ulp so downstream validation
  // sees an exactly symmetric matrix.
  for (int p = 0; p < npts; ++p)
    for (int q = p + 1; q < npts; ++q) {
      double v = 0.5 * (b.d(p, q) + b.d(q, p));
      b.dist[static_cast<std::size_t>(p) * npts + q] = v;
      b.dist[static_cast<std::size_t>(q) * npts + p] = v;
    }
  // Shortest-path distances must form a metric; anything else is a bug.
  for (int p = 0; p < npts; ++p)
    for (int q = 0; q < npts; ++q) {
      if (p != q && !(b.d(p, q) > 0.0))
        throw BoundViolation("boundary metric degenerate");
      for (int s = 0; s < npts; ++s)
        if (b.d(p, s) > b.d(p, q) + b.d(q, s) + 1e-12)
          throw BoundViolation("boundary metric violates the triangle inequality");
    }
  return b;
}

bool UniformizationReport::ok() const {
  return snowflake_max_violation == 0.0 && vertex_bound_max_violation == 0.0 &&
         whitney_max_err <= 1e-12 && diam_ok;
}

UniformizationReport verify_uniformization(const UniformizedFilling& u,
                                           int sample_cap, std::uint64_t seed) {
  const FillingGraph& g = u.graph();
  const FiniteMetricSpace& Z = g.space();
  const double eps = u.eps(), sigma = u.sigma(), alpha = g.alpha(), tau = g.tau();
  UniformizationReport rep;

  int V = g.vertex_count(), N = u.node_count();
  std::vector<std::vector<double>> dist(N);
  for (int i = 0; i < N; ++i) dist[i] = u.dijkstra(i);

  rep.diam_eps = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) rep.diam_eps = std::max(rep.diam_eps, dist[i][j]);
  rep.diam_ok = rep.diam_eps <= 2.0 / eps + 1e-12;

  for (int i = 0; i < V; ++i) {
    double to_bdry = std::numeric_limits<double>::infinity();
    for (int p = 0; p < Z.size(); ++p)
      to_bdry = std::min(to_bdry, dist[i][u.boundary_node(p)]);
    rep.whitney_max_err = std::max(rep.whitney_max_err, std::abs(to_bdry - u.whitney(i)));
  }

  bool snowflake_regime = tau > 1.0 && sigma <= 1.0 + 1e-12;
  if (snowflake_regime) {
    int l = g.ball_overlap_level();
    rep.c1 = std::pow(2.0 * tau * alpha, sigma);
    rep.c2 = 4.0 * std::pow(alpha, (l + 1) * sigma) / eps;
    const double slack = 1e-12;
    for (int p = 0; p < Z.size(); ++p)
      for (int q = p + 1; q < Z.size(); ++q) {
        double de = dist[u.boundary_node(p)][u.boundary_node(q)];
        double dzs = std::pow(Z.dist(p, q), sigma);
        double lo = dzs / rep.c1 - de;
        double hi = de - rep.c2 * dzs;
        rep.snowflake_max_violation =
            std::max({rep.snowflake_max_violation, lo - slack * dzs, hi - slack * dzs});
      }
    for (int i = 0; i < V; ++i)
      for (int j = i + 1; j < V; ++j) {
        double dz = Z.dist(g.vertex(i).point, g.vertex(j).point);
        double viol = std::pow(dz, sigma) - rep.c1 * dist[i][j];
        rep.vertex_bound_max_violation =
            std::max(rep.vertex_bound_max_violation, viol - 1e-12);
      }
    rep.snowflake_max_violation = std::max(rep.snowflake_max_violation, 0.0);
    rep.vertex_bound_max_violation = std::max(rep.vertex_bound_max_violation, 0.0);
    if (rep.snowflake_max_violation > 0.0 || rep.vertex_bound_max_violation > 0.0)
      throw BoundViolation("snowflake comparison bounds violated");
  }

  // Diagnostic: d_eps against e^{-eps (v|w)} min(d_X, 1) over vertex pairs.
  rep.comp_ratio_min = std::numeric_limits<double>::infinity();
  rep.comp_ratio_max = 0.0;
  long long total_pairs = static_cast<long long>(V) * (V - 1) / 2;
  Rng rng(seed);
  bool sample = total_pairs > sample_cap;
  auto consider = [&](int i, int j, const std::vector<int>& bfs_i) {
    double prod = 0.5 * (g.vertex(i).level + g.vertex(j).level - bfs_i[j]);
    double denom = std::exp(-eps * prod) * std::min<double>(bfs_i[j], 1.0);
    if (denom <= 0.0) return;
    double r = dist[i][j] / denom;
    rep.comp_ratio_min = std::min(rep.comp_ratio_min, r);
    rep.comp_ratio_max = std::max(rep.comp_ratio_max, r);
  };
  if (!sample) {
    for (int i = 0; i < V; ++i) {
      auto bfs = g.bfs_distances(i);
      for (int j = i + 1; j < V; ++j) consider(i, j, bfs);
    }
  } else {
    for (int s = 0; s < sample_cap; ++s) {
      int i = static_cast<int>(rng.uniform_int(V));
      int j = static_cast<int>(rng.uniform_int(V));
      if (i == j) continue;
      auto bfs = g.bfs_distances(i);
      consider(i, j, bfs);
    }
  }

  rep.collapse_profile.assign(g.truncation_level() + 1, 0.0);
  for (int n = 0; n <= g.truncation_level(); ++n) {
    double worst = 0.0;
    const auto& lv = g.level_vertices(n);
    for (std::size_t a = 0; a < lv.size(); ++a)
      for (std::size_t b = a + 1; b < lv.size(); ++b)
        worst = std::max(worst, dist[lv[a]][lv[b]]);
    rep.collapse_profile[n] = worst;
  }
  return rep;
}

namespace {

// Canonical curve between two vertices: descend both sides to the crossover
// level fixed by the point distance, join by the (possibly collapsed)
// horizontal edge. Returns the vertex chain.
std::vector<int> canonical_curve(const FillingGraph& g, int a, int b) {
  const FiniteMetricSpace& Z = g.space();
  const Vertex &va = g.vertex(a), &vb = g.vertex(b);
  double alpha = g.alpha();
  if (va.point == vb.point) {
    std::vector<int> chain;
    int lo = std::min(va.level, vb.level), hi = std::max(va.level, vb.level);
    for (int j = lo; j <= hi; ++j) chain.push_back(g.vertex_id(va.point, j));
    if (va.level > vb.level) std::reverse(chain.begin(), chain.end());
    return chain;
  }
  int k = std::min(va.level, vb.level);
  while (k > 0 && Z.dist(va.point, vb.point) > std::pow(alpha, -k)) --k;
  int h = std::max(k - std::max(g.ball_overlap_level(), 0), 0);

  // Net ancestors covering each endpoint at every level down to h.
  auto cover_chain = [&](int point, int from, int to) {
    std::vector<int> ids;
    for (int j = from; j >= to; --j) {
      double r = std::pow(alpha, -j);
      for (int q : g.nets().levels[j])
        if (Z.dist(q, point) < r) {
          ids.push_back(g.vertex_id(q, j));
          break;
        }
    }
    return ids;
  };
  std::vector<int> left = cover_chain(va.point, va.level, h);
  std::vector<int> right = cover_chain(vb.point, vb.level, h);
  std::vector<int> chain = left;
  if (right.back() != left.back()) chain.push_back(right.back());
  for (int i = static_cast<int>(right.size()) - 2; i >= 0; --i)
    chain.push_back(right[i]);
  return chain;
}

}  // namespace

UniformityDiagnostic uniformity_diagnostic(const UniformizedFilling& u,
                                           long long pair_cap,
                                           std::uint64_t seed) {
  const FillingGraph& g = u.graph();
  if (!(g.tau() > 1.0))
    throw NotInRegime("uniformity diagnostic requires tau > 1");
  UniformityDiagnostic diag;
  int V = g.vertex_count();

  // Edge lengths by endpoint pair for chain lookup.
  auto edge_len_between = [&](int x, int y) {
    for (auto [nb, k] : g.neighbors(x))
      if (nb == y)
        return EdgeGeom{k, std::min(g.vertex(x).level, g.vertex(y).level), u.eps()}
            .length();
    throw UnknownVertex("canonical curve stepped off the graph");
  };
  auto whitney_at = [&](int id) { return u.whitney(id); };

  auto probe = [&](int a, int b, double d_ab) {
    auto chain = canonical_curve(g, a, b);
    if (chain.size() < 2) return;
    ++diag.curves;
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      cum.push_back(cum.back() + edge_len_between(chain[i], chain[i + 1]));
    double len = cum.back();
    if (d_ab > 0.0) diag.max_length_ratio = std::max(diag.max_length_ratio, len / d_ab);
    // Interior vertices and edge midpoints.
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
      double t = cum[i];
      double ratio = std::min(t, len - t) / whitney_at(chain[i]);
      diag.max_cone_ratio = std::max(diag.max_cone_ratio, ratio);
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      double t = 0.5 * (cum[i] + cum[i + 1]);
      double half = 0.5 * (cum[i + 1] - cum[i]);
      double dx = std::min(half + whitney_at(chain[i]), half + whitney_at(chain[i + 1]));
      double ratio = std::min(t, len - t) / dx;
      diag.max_cone_ratio = std::max(diag.max_cone_ratio, ratio);
    }
  };

  long long total = static_cast<long long>(V) * (V - 1) / 2;
  if (total <= pair_cap) {
    for (int a = 0; a < V; ++a) {
      auto dist = u.dijkstra(a);
      for (int b = a + 1; b < V; ++b) probe(a, b, dist[b]);
    }
  } else {
    Rng rng(seed);
    for (long long s = 0; s < pair_cap; ++s) {
      int a = static_cast<int>(rng.uniform_int(V));
      int b = static_cast<int>(rng.uniform_int(V));
      if (a == b) continue;
      probe(a, b, u.dijkstra(a)[b]);
    }
  }
  return diag;
}

}  // namespace hypfill
