#include "hypfill/metric_space.hpp"

#include <algorithm>
#include <cmath>

#include "hypfill/rng.hpp"

namespace hypfill {

namespace {

void validate_matrix(const std::vector<double>& d, int n) {
  if (n < 1) throw EmptyInput("metric space needs at least one point");
  if (d.size() != static_cast<std::size_t>(n) * n)
    throw BadParams("distance matrix size does not match point count");
  auto at = [&](int i, int j) { return d[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    if (at(i, i) != 0.0) throw BadParams("nonzero diagonal in distance matrix");
    for (int j = i + 1; j < n; ++j) {
      double v = at(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw BadParams("distances must be finite and nonnegative");
      if (v != at(j, i)) throw BadParams("distance matrix is not symmetric");
      if (v == 0.0) throw DuplicatePoints(i, j);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (at(i, k) > at(i, j) + at(j, k) + FiniteMetricSpace::kTriangleTol)
          throw TriangleViolation(i, j, k);
}

std::vector<std::string> default_labels(int n, std::vector<std::string> labels) {
  if (labels.empty()) {
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (static_cast<int>(labels.size()) != n) {
    throw BadParams("label count does not match point count");
  }
  return labels;
}

}  // namespace

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<double> dist, int n,
                                                 double target_diam,
                                                 std::vector<std::string> labels) {
  if (!(target_diam > 0.0 && target_diam < 1.0))
    throw BadParams("target diameter must lie in (0,1)");
  validate_matrix(dist, n);

  FiniteMetricSpace s;
  s.n_ = n;
  s.labels_ = default_labels(n, std::move(labels));

  double raw_diam = 0.0;
  for (double v : dist) raw_diam = std::max(raw_diam, v);

  double scale = 1.0;
  if (n > 1) {
    scale = target_diam / raw_diam;
    for (double& v : dist) v *= scale;
  }
  s.scale_factor_ = scale;
  s.dist_ = std::move(dist);

  s.diam_ = 0.0;
  s.min_sep_ = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = s.dist(i, j);
      s.diam_ = std::max(s.diam_, v);
      s.min_sep_ = std::min(s.min_sep_, v);
    }
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix_no_rescale(
    std::vector<double> dist, int n, std::vector<std::string> labels) {
  validate_matrix(dist, n);
  double raw_diam = 0.0;
  for (double v : dist) raw_diam = std::max(raw_diam, v);
  if (raw_diam >= 1.0) throw BadParams("diameter must be < 1 when not rescaling");

  FiniteMetricSpace s;
  s.n_ = n;
  s.labels_ = default_labels(n, std::move(labels));
  s.scale_factor_ = 1.0;
  s.dist_ = std::move(dist);
  s.diam_ = raw_diam;
  s.min_sep_ = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.min_sep_ = std::min(s.min_sep_, s.dist(i, j));
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_points(
    const std::vector<std::vector<double>>& coords, double target_diam,
    std::vector<std::string> labels) {
  int n = static_cast<int>(coords.size());
  if (n < 1) throw EmptyInput("metric space needs at least one point");
  std::size_t dim = coords[0].size();
  for (const auto& row : coords)
    if (row.size() != dim) throw BadParams("inconsistent coordinate dimensions");
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        double t = coords[i][k] - coords[j][k];
        acc += t * t;
      }
      double v = std::sqrt(acc);
      d[static_cast<std::size_t>(i) * n + j] = v;
      d[static_cast<std::size_t>(j) * n + i] = v;
    }
  return from_matrix(std::move(d), n, target_diam, std::move(labels));
}

double doubling_constant_estimate(const FiniteMetricSpace& space,
                                  const std::vector<double>& weights,
                                  int samples, std::uint64_t seed,
                                  int exhaustive_limit) {
  int n = space.size();
  if (static_cast<int>(weights.size()) != n)
    throw BadParams("weight count does not match point count");
  for (double w : weights)
    if (!(w > 0.0)) throw BadParams("measure weights must be strictly positive");
  if (n == 1) return 1.0;

  auto ball_mass = [&](int c, double r) {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      if (space.dist(i, c) < r) m += weights[i];
    return m;
  };
  auto ratio = [&](int c, double r) { return ball_mass(c, 2.0 * r) / ball_mass(c, r); };

  double best = 1.0;
  if (n <= exhaustive_limit) {
    // The ratio is piecewise constant in r with breakpoints at pairwise
    // distances and their halves; evaluating at the breakpoints plus one
    // radius beyond the diameter attains the exact supremum.
    std::vector<double> radii;
    radii.reserve(2 * n + 1);
    for (int c = 0; c < n; ++c) {
      radii.clear();
      for (int j = 0; j < n; ++j)
        if (j != c) {
          radii.push_back(space.dist(j, c));
          radii.push_back(0.5 * space.dist(j, c));
        }
      radii.push_back(2.0 * space.diam());
      for (double r : radii) best = std::max(best, ratio(c, r));
    }
  } else {
    Rng rng(seed);
    double lo = space.min_sep() / 2.0, hi = 2.0 * space.diam();
    for (int s = 0; s < samples; ++s) {
      int c = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
      best = std::max(best, ratio(c, rng.log_uniform(lo, hi)));
    }
  }
  return best;
}

}  // namespace hypfill
