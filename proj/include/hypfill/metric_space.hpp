#ifndef HYPFILL_METRIC_SPACE_HPP
#define HYPFILL_METRIC_SPACE_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hypfill/errors.hpp"

namespace hypfill {

/// A validated finite metric space, rescaled so that its diameter lies
/// strictly inside (0,1). Immutable after construction; all downstream
/// structures (nets, fillings, measures) reference it read-only.
///
/// Balls are open throughout: B(x,r) = { y : d(y,x) < r }.
class FiniteMetricSpace {
 public:
  /// Validates a raw distance matrix and rescales it so diam = target_diam.
  /// Throws EmptyInput, DuplicatePoints, TriangleViolation or BadParams.
  /// A single point is accepted as-is (diameter 0, scale 1).
  static FiniteMetricSpace from_matrix(std::vector<double> dist, int n,
                                       double target_diam = 0.5,
                                       std::vector<std::string> labels = {});

  /// Euclidean distances from coordinate rows, then from_matrix.
  static FiniteMetricSpace from_points(const std::vector<std::vector<double>>& coords,
                                       double target_diam = 0.5,
                                       std::vector<std::string> labels = {});

  /// Validates without rescaling; requires diam < 1 already.
  static FiniteMetricSpace from_matrix_no_rescale(std::vector<double> dist, int n,
                                                  std::vector<std::string> labels = {});

  int size() const { return n_; }
  double dist(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j]; }
  double diam() const { return diam_; }
  /// Minimum over distinct pairs; +inf for a single point.
  double min_sep() const { return min_sep_; }
  /// Factor applied to the raw input: dist = scale_factor * raw_dist.
  double scale_factor() const { return scale_factor_; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Atom count of the open ball B(center, r) is not tracked here; helpers
  /// below answer membership queries for net and measure construction.
  bool in_ball(int point, int center, double r) const { return dist(point, center) < r; }

  static constexpr double kTriangleTol = 1e-9;

  /// Empty placeholder; every usable instance comes from a factory above.
  FiniteMetricSpace() = default;

 private:
  int n_ = 0;
  std::vector<double> dist_;  // row-major n x n
  std::vector<std::string> labels_;
  double diam_ = 0.0;
  double min_sep_ = std::numeric_limits<double>::infinity();
  double scale_factor_ = 1.0;
};

/// Largest doubling ratio nu(B(x,2r))/nu(B(x,r)) observed over a radius
/// family. For spaces with at most `exhaustive_limit` points the sweep is
/// exact over the piecewise-constant radius structure (all pairwise
/// distances, their halves, and one radius past the diameter); otherwise
/// (center, radius) pairs are sampled with radii log-uniform in
/// [min_sep/2, 2 diam], deterministically in `seed`.
double doubling_constant_estimate(const FiniteMetricSpace& space,
                                  const std::vector<double>& weights,
                                  int samples = 4096, std::uint64_t seed = 1,
                                  int exhaustive_limit = 200);

}  // namespace hypfill

#endif
