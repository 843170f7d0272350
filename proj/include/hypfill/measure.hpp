#ifndef HYPFILL_MEASURE_HPP
#define HYPFILL_MEASURE_HPP

#include <cstdint>
#include <vector>

#include "hypfill/uniformize.hpp"

namespace hypfill {

/// Atomic measure on the boundary space; strictly positive atoms.
struct BoundaryMeasure {
  std::vector<double> weight;

  double total() const;
  /// Mass of the open ball B(center, r).
  double ball(const FiniteMetricSpace& space, int center, double r) const;
  static BoundaryMeasure counting(int n);
  void validate(int n_points) const;
};

/// Covered portion of the graph under a metric ball: per-edge parameter
/// intervals plus the covered mass of each ray tail.
struct BallCover {
  struct Interval {
    int edge = 0;
    double t0 = 0.0, t1 = 0.0;
  };
  std::vector<Interval> intervals;
  std::vector<std::pair<int, double>> tail_mass;  // (point, covered mass)
};

/// The lift of a boundary measure to the uniformized filling. Vertex
/// (z,n) carries nu(B(z, alpha^{-n})); every unordered edge receives twice
/// the sum of its endpoint masses damped by e^{-beta level} as a density
/// against graph length (each edge shows up from both endpoints in the
/// smearing sum, hence the factor 2). Ray tails below the truncation carry
/// the closed-form geometric remainder, so all totals and ball masses are
/// exact for the untruncated graph.
class LiftedMeasure {
 public:
  static LiftedMeasure build(const UniformizedFilling& u, BoundaryMeasure nu,
                             double beta);

  const UniformizedFilling& unif() const { return u_; }
  const BoundaryMeasure& boundary() const { return nu_; }
  double beta() const { return beta_; }

  double vertex_mass(int vertex_id) const { return muhat_[vertex_id]; }
  double edge_density(int edge_index) const { return density_[edge_index]; }
  double tail_mass(int point) const { return tail_[point]; }
  double total_mass() const { return total_; }

  /// Exact mass of the d_eps ball around a node (vertex or boundary node).
  double ball_mass(int node, double r) const;
  double ball_mass_at_edge_point(int edge_index, double t, double r) const;
  BallCover cover(const std::vector<double>& node_dist, double r) const;
  double cover_mass(const BallCover& c) const;

 private:
  UniformizedFilling u_;
  BoundaryMeasure nu_;
  double beta_ = 0.0;
  std::vector<double> muhat_;    // per vertex
  std::vector<double> density_;  // per edge
  std::vector<double> tail_;     // per point
  double total_ = 0.0;
};

LiftedMeasure lift_measure(const UniformizedFilling& u, BoundaryMeasure nu,
                           double beta);

struct MeasureReport {
  int neighbor_exponent = 0;        // smallest N with 2^N >= alpha(1+tau)+tau
  double doubling_constant = 0.0;   // exact sup for the boundary measure
  double neighbor_bound = 0.0;      // doubling_constant^N
  double neighbor_max_ratio = 0.0;  // observed endpoint-mass ratio
  double doubling_max = 0.0;        // lifted-measure doubling sweep maximum
  double codim_lo = 0.0, codim_hi = 0.0;
  double s_nu = 0.0, eta = 0.0;
  double s_beta_target = 0.0;
  double s_beta_min_const = 0.0;  // min ratio/(r'/r)^{s_beta} over sampled pairs
  int samples = 0;
  std::uint64_t seed = 0;
};

/// Edge-wise neighbor-mass bound (hard; throws NeighborMassViolation),
/// doubling sweep, boundary codimension band, and dimension-exponent
/// estimates.
MeasureReport verify_measure(const LiftedMeasure& m, int samples = 256,
                             std::uint64_t seed = 1);

/// Graph function paired with its per-edge gradient (used by the Poincare
/// diagnostic, which validates the gradient against the function).
struct FunctionWithGradient {
  std::vector<double> value;     // per vertex
  std::vector<double> gradient;  // per edge
};

/// Quotient (avg_B |u - u_B| dmu) / (r avg_B g dmu) for one ball given the
/// node distances of its center; all integrals are closed-form per covered
/// edge interval (u is linear in arc length between vertex values).
double poincare_quotient(const LiftedMeasure& m, const FunctionWithGradient& f,
                         const std::vector<double>& node_dist, double r);

/// Max of poincare_quotient over the supplied functions and sampled balls,
/// an empirical lower bound for the best 1-Poincare constant. Throws
/// GradientMismatch when a supplied gradient is not |du|/len on some edge.
double poincare_ratio(const LiftedMeasure& m,
                      const std::vector<FunctionWithGradient>& functions,
                      int ball_samples = 64, std::uint64_t seed = 1);

}  // namespace hypfill

#endif
