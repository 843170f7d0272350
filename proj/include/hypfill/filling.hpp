#ifndef HYPFILL_FILLING_HPP
#define HYPFILL_FILLING_HPP

#include <cstdint>
#include <vector>

#include "hypfill/nets.hpp"

namespace hypfill {

struct Vertex {
  int point = 0;
  int level = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

enum class EdgeKind : std::uint8_t { Horizontal, Vertical };

struct Edge {
  int u = 0, v = 0;  // vertex ids, u < v in (level, point) order
  EdgeKind kind = EdgeKind::Vertical;
};

/// The truncated filling graph over a net hierarchy. Level-n vertices are
/// the net points of level n; two vertices are neighbors when their scaled
/// balls share a point of the space:
///   same level n:        some point lies in both tau B(x,a^{-n}) balls,
///   levels n and n+1:    some point lies in B(x,a^{-n}) and B(y,a^{-n-1}),
/// with all balls open. Ball intersection is decided by an exact witness
/// search over the (finite) space.
///
/// At levels >= stabilization_level the graph consists of disjoint
/// single-point rays (z,n) ~ (z,n+1); everything below the truncation level
/// is therefore represented implicitly and exactly by those rays.
class FillingGraph {
 public:
  /// tau > 1 normally; tau in (0,1] only with counterexample_mode.
  /// Requires n_trunc >= stabilization level and nets deep enough.
  static FillingGraph build(FiniteMetricSpace space, NetHierarchy nets, double tau,
                            int n_trunc, bool counterexample_mode = false);

  const FiniteMetricSpace& space() const { return space_; }
  const NetHierarchy& nets() const { return nets_; }
  double alpha() const { return nets_.alpha; }
  double tau() const { return tau_; }
  bool counterexample_mode() const { return counterexample_mode_; }
  /// Smallest l >= 0 with alpha^{-l} <= tau-1; -1 in counterexample mode.
  int ball_overlap_level() const { return l_; }
  int stabilization_level() const { return n_star_; }
  int truncation_level() const { return n_trunc_; }

  int vertex_count() const { return static_cast<int>(verts_.size()); }
  const Vertex& vertex(int id) const { return verts_[id]; }
  const std::vector<Vertex>& vertices() const { return verts_; }
  /// Id of (point, level); throws UnknownVertex.
  int vertex_id(int point, int level) const;
  int vertex_id(const Vertex& v) const { return vertex_id(v.point, v.level); }
  bool has_vertex(int point, int level) const;
  const std::vector<int>& level_vertices(int level) const { return by_level_[level]; }
  int root_id() const { return 0; }

  const std::vector<std::pair<int, EdgeKind>>& neighbors(int id) const {
    return adj_[id];
  }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(int id) const { return static_cast<int>(adj_[id].size()); }

  /// BFS distances (edge counts) from a source vertex; unreachable = -1
  /// (never happens: the graph is connected).
  std::vector<int> bfs_distances(int src) const;

  /// Levels of consecutive net membership: first level containing the point.
  int entry_level(int point) const { return entry_[point]; }
  /// Deepest level at which the point's vertex has a neighbor besides its
  /// own ray; below this the point only carries ray edges.
  int last_busy_level(int point) const { return last_busy_[point]; }

 private:
  FiniteMetricSpace space_;
  NetHierarchy nets_;
  double tau_ = 2.0;
  bool counterexample_mode_ = false;
  int l_ = 0;
  int n_star_ = 0;
  int n_trunc_ = 0;

  std::vector<Vertex> verts_;
  std::vector<std::vector<int>> by_level_;
  std::vector<int> level_offset_;
  std::vector<std::vector<std::pair<int, EdgeKind>>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> entry_, last_busy_;
};

/// Smallest n with 2 tau alpha^{-n} <= min_sep; all cross edges vanish at
/// and below this level. 0 for a single point.
int stabilization_level(const FiniteMetricSpace& space, double alpha, double tau);

int graph_distance(const FillingGraph& g, const Vertex& v, const Vertex& w);

/// Twice the Gromov product (v|w) based at the root; exact integer.
int gromov_product_x2(const FillingGraph& g, const Vertex& v, const Vertex& w);
double gromov_product(const FillingGraph& g, const Vertex& v, const Vertex& w);

struct HyperbolicityResult {
  double constant = 0.0;  // best four-point constant over scanned triples
  bool exhaustive = false;
  Vertex witness_u, witness_v, witness_w;
  int scanned_vertices = 0;
};

/// Four-point constant max min{(v|u),(w|u)} - (v|w) over vertex triples.
/// Exhaustive over the ray-collapsed vertex set (Gromov products are
/// constant along stabilized rays, so the collapsed maximum equals the full
/// one) when its size is at most `cap`; otherwise a seeded sample of `cap`
/// vertices is scanned exhaustively.
HyperbolicityResult hyperbolicity_constant(const FillingGraph& g, int cap = 400,
                                           std::uint64_t seed = 1);

struct ProductComparisonResult {
  double observed_min = 0.0, observed_max = 0.0;
  double lower_bound = 0.0, upper_bound = 0.0;  // proven bracket
  double max_violation = 0.0;                   // 0 when all pairs inside
};

/// Checks alpha^{-(v|w)} / (d_Z + alpha^{-n} + alpha^{-m}) against the
/// proven bracket [(alpha-1)/(4 tau alpha), alpha^{l+3/2}] over all vertex
/// pairs. Throws BoundViolation on failure (these are theorems).
ProductComparisonResult product_comparison_check(const FillingGraph& g);

struct DegreeStats {
  int max_degree = 0;
  std::vector<int> per_level_max;
  std::vector<int> histogram;  // histogram[d] = number of vertices of degree d
};

DegreeStats degree_stats(const FillingGraph& g);

}  // namespace hypfill

#endif
