#ifndef HYPFILL_UNIFORMIZE_HPP
#define HYPFILL_UNIFORMIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hypfill/filling.hpp"

namespace hypfill {

/// Geometry of one edge under the conformal weight e^{-eps * (distance to
/// root)}. Edges are parametrized by t in [0,1] from their canonical first
/// endpoint (the shallower one for vertical edges). The weight profile is
///   vertical at levels (n, n+1):  e^{-eps (n + t)}
///   horizontal at level n:        e^{-eps (n + min(t, 1-t))}
/// All arc-length maps and their inverses are closed forms.
struct EdgeGeom {
  EdgeKind kind = EdgeKind::Vertical;
  int level = 0;
  double eps = 1.0;

  double length() const;
  /// Arc length from t=0 to t.
  double arc(double t) const;
  /// Inverse of arc(); clamped to [0,1].
  double t_at_arc(double s) const;
  /// Integral of arc(t) dt over [t0, t1].
  double arc_integral(double t0, double t1) const;
};

/// A filling equipped with the uniformized length metric. One boundary node
/// is attached per point of the space at the bottom of its ray with the
/// exact tail weight; because levels at and past stabilization are disjoint
/// rays, Dijkstra over this finite weighted graph reproduces the metric of
/// the untruncated filling exactly for every pair of nodes.
class UniformizedFilling {
 public:
  /// eps > 0; eps > log(alpha) requires the collapse flag.
  static UniformizedFilling build(FillingGraph graph, double eps,
                                  bool collapse_mode = false);

  const FillingGraph& graph() const { return graph_; }
  double eps() const { return eps_; }
  /// eps / log(alpha), at most 1 outside collapse mode.
  double sigma() const { return sigma_; }
  bool collapse_mode() const { return collapse_mode_; }

  /// Node ids: [0, V) graph vertices, [V, V + |Z|) boundary nodes.
  int node_count() const { return graph_.vertex_count() + graph_.space().size(); }
  int boundary_node(int point) const { return graph_.vertex_count() + point; }
  bool is_boundary(int node) const { return node >= graph_.vertex_count(); }
  int boundary_point(int node) const { return node - graph_.vertex_count(); }
  std::string node_label(int node) const;

  const std::vector<double>& edge_lengths() const { return edge_len_; }
  double edge_length(int edge_index) const { return edge_len_[edge_index]; }
  EdgeGeom edge_geom(int edge_index) const;
  /// d_eps mass of the tail below (z, N_trunc): e^{-eps N}/eps.
  double tail_weight() const { return tail_weight_; }
  /// e^{-eps n}/eps, the exact distance from a level-n vertex to the
  /// boundary.
  double whitney(int vertex_id) const;

  std::vector<double> dijkstra(int src_node) const;
  /// Dijkstra seeded from an interior point of an edge at parameter t.
  std::vector<double> dijkstra_from_edge_point(int edge_index, double t) const;
  double d_eps(int node_a, int node_b) const;

 private:
  FillingGraph graph_;
  double eps_ = 0.0, sigma_ = 0.0, tail_weight_ = 0.0;
  bool collapse_mode_ = false;
  std::vector<double> edge_len_;
  std::vector<std::vector<std::pair<int, double>>> wadj_;
};

/// Exact pairwise uniformized distances between the boundary nodes.
struct BoundarySpace {
  int n = 0;
  std::vector<std::string> labels;
  std::vector<double> dist;  // row-major n x n

  double d(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
  /// As a validated metric space scaled by `scale` (no further rescale).
  FiniteMetricSpace to_metric_space(double scale) const;
};

BoundarySpace boundary_metric(const UniformizedFilling& u);

struct UniformizationReport {
  double c1 = 0.0, c2 = 0.0;   // snowflake constants (2 tau alpha)^sigma, 4 a^{(l+1)sigma}/eps
  double snowflake_max_violation = 0.0;
  double vertex_bound_max_violation = 0.0;
  double whitney_max_err = 0.0;
  double diam_eps = 0.0;
  bool diam_ok = false;
  double comp_ratio_min = 0.0, comp_ratio_max = 0.0;  // d_eps vs product form
  std::vector<double> collapse_profile;  // D(n): max same-level d_eps
  bool ok() const;
};

/// Snowflake bounds (hard, throws BoundViolation when eps <= log alpha and
/// tau > 1), Whitney identity, diameter bound, and the comparison-ratio and
/// collapse diagnostics.
UniformizationReport verify_uniformization(const UniformizedFilling& u,
                                           int sample_cap = 20000,
                                           std::uint64_t seed = 1);

struct UniformityDiagnostic {
  /// Worst min(t, len-t) / d_eps(curve(t)) over the sampled curve points;
  /// an empirical uniformity constant for the canonical curves.
  double max_cone_ratio = 0.0;
  /// Worst curve length over endpoint distance (quasiconvexity constant).
  double max_length_ratio = 0.0;
  long long curves = 0;
};

/// Probes the twisted-cone condition along the canonical descend /
/// crossover / ascend curves between vertex pairs (all pairs up to
/// pair_cap, then seeded sampling). Diagnostic only: the uniformity
/// constant has no closed form to assert against.
UniformityDiagnostic uniformity_diagnostic(const UniformizedFilling& u,
                                           long long pair_cap = 4000,
                                           std::uint64_t seed = 1);

}  // namespace hypfill

#endif
