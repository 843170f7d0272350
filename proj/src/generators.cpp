#include "hypfill/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "hypfill/rng.hpp"

namespace hypfill {

int RootedTree::depth(int v) const {
  int d = 0;
  while (parent[v] >= 0) {
    v = parent[v];
    ++d;
  }
  return d;
}

std::vector<int> RootedTree::leaves() const {
  std::vector<char> has_child(parent.size(), 0);
  for (int v = 0; v < size(); ++v)
    if (parent[v] >= 0) has_child[parent[v]] = 1;
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (!has_child[v]) out.push_back(v);
  return out;
}

int RootedTree::lca_depth(int a, int b) const {
  int da = depth(a), db = depth(b);
  while (da > db) {
    a = parent[a];
    --da;
  }
  while (db > da) {
    b = parent[b];
    --db;
  }
  while (a != b) {
    a = parent[a];
    b = parent[b];
    --da;
  }
  return da;
}

namespace {

std::string coord_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

FiniteMetricSpace space_from_line(const std::vector<double>& xs, double target) {
  std::vector<std::vector<double>> coords;
  std::vector<std::string> labels;
  coords.reserve(xs.size());
  for (double x : xs) {
    coords.push_back({x});
    labels.push_back(coord_label(x));
  }
  return FiniteMetricSpace::from_points(coords, target, std::move(labels));
}

// Dyadic rank: smallest j >= 0 with x a multiple of 2^{-j}; large sentinel
// for non-dyadic coordinates. Used to order slit samples coarse-first so
// the greedy nets select exact dyadic cascades.
int dyadic_rank(double x, int max_rank = 80) {
  double scaled = x;
  for (int j = 0; j <= max_rank; ++j) {
    if (scaled == std::floor(scaled)) return j;
    scaled *= 2.0;
  }
  return max_rank + 1;
}

FiniteMetricSpace line_space_rank_ordered(std::vector<double> xs, double target) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::stable_sort(xs.begin(), xs.end(), [](double a, double b) {
    int ra = dyadic_rank(a), rb = dyadic_rank(b);
    return ra != rb ? ra < rb : a < b;
  });
  return space_from_line(xs, target);
}

}  // namespace

FiniteMetricSpace interval_net(int k) {
  if (k < 1) throw BadParams("interval_net needs at least 1 point");
  if (k == 1) return space_from_line({0.0}, 0.5);
  std::vector<double> xs(k);
  for (int i = 0; i < k; ++i) xs[i] = static_cast<double>(i) / (k - 1);
  return space_from_line(xs, 0.5);
}

FiniteMetricSpace grid(int dim, int k) {
  if (dim < 1 || k < 1) throw BadParams("grid needs dim >= 1 and k >= 1");
  if (k == 1) return FiniteMetricSpace::from_points({{0.0}}, 0.5);
  int n = 1;
  for (int d = 0; d < dim; ++d) {
    if (n > 100000 / k) throw BadParams("grid too large");
    n *= k;
  }
  std::vector<std::vector<double>> coords;
  std::vector<std::string> labels;
  coords.reserve(n);
  for (int idx = 0; idx < n; ++idx) {
    std::vector<double> p(dim);
    std::string lab;
    int rest = idx;
    for (int d = 0; d < dim; ++d) {
      int c = rest % k;
      rest /= k;
      p[d] = static_cast<double>(c) / (k - 1);
      lab += (d ? "_" : "") + std::to_string(c);
    }
    coords.push_back(std::move(p));
    labels.push_back(std::move(lab));
  }
  return FiniteMetricSpace::from_points(coords, 0.5, std::move(labels));
}

FiniteMetricSpace cantor(int depth, double ratio) {
  if (depth < 0 || depth > 20) throw BadParams("cantor depth out of range");
  if (!(ratio > 0.0 && ratio < 0.5)) throw BadParams("cantor ratio must lie in (0,1/2)");
  int n = 1 << depth;
  std::vector<double> xs(n);
  for (int mask = 0; mask < n; ++mask) {
    double x = 0.0, step = 1.0 - ratio;
    for (int i = 0; i < depth; ++i) {
      if (mask & (1 << i)) x += step;
      step *= ratio;
    }
    xs[mask] = x;
  }
  return space_from_line(xs, 0.5);
}

FiniteMetricSpace slit_example(int n, double rho) {
  if (n < 3) throw BadParams("slit_example requires n >= 3");
  double cap = std::ldexp(1.0, -n - 1);
  if (!(rho > 0.0 && rho < cap))
    throw BadParams("slit_example requires 0 < rho < 2^{-n-1}");
  double zm = 0.25 - rho, zp = 0.25 + rho;
  double g = std::ldexp(1.0, -n - 2);
  std::vector<double> xs = {zm, zp};
  for (double x = 0.0; x <= 0.5 + g / 2; x += g)
    if (x <= zm || x >= zp) xs.push_back(x);
  return line_space_rank_ordered(std::move(xs), 0.5);
}

FiniteMetricSpace slit_family(const std::vector<int>& depths) {
  if (depths.empty()) throw BadParams("slit_family needs at least one slit");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] < 3) throw BadParams("slit depths must be >= 3");
    if (i > 0 && depths[i] < depths[i - 1])
      throw BadParams("slit depths must be nondecreasing");
  }

  // Each slit contributes, at its own scale, the gap endpoints 1/4 -+ rho
  // (rho = 2^{-s-3}, s = depth+3) and the dyadic cascade 1/4 -+ 2^{-j},
  // j = 2..s, flanking the gap. The next slit replaces the neighborhood of
  // 0 at scale 2^{-(s+4)}.
  std::vector<double> xs = {0.0};
  double scale = 1.0;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    int s = depths[i] + 3;
    double rho = std::ldexp(1.0, -s - 3);
    for (int j = 2; j <= s; ++j) {
      double f = std::ldexp(1.0, -j);
      xs.push_back(scale * (0.25 - f));
      xs.push_back(scale * (0.25 + f));
    }
    xs.push_back(scale * (0.25 - rho));
    xs.push_back(scale * (0.25 + rho));
    xs.push_back(scale * 0.5);
    scale *= std::ldexp(1.0, -(s + 4));
  }
  return line_space_rank_ordered(std::move(xs), 0.5);
}

FiniteMetricSpace snowflake(const FiniteMetricSpace& base, double exponent,
                            double target_diam) {
  if (!(exponent > 0.0 && exponent <= 1.0))
    throw BadParams("snowflake exponent must lie in (0,1]");
  int n = base.size();
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        d[static_cast<std::size_t>(i) * n + j] = std::pow(base.dist(i, j), exponent);
  return FiniteMetricSpace::from_matrix(std::move(d), n, target_diam, base.labels());
}

RootedTree random_tree(int max_vertices, int max_children, std::uint64_t seed) {
  if (max_vertices < 1 || max_children < 1)
    throw BadParams("random_tree needs positive size limits");
  Rng rng(seed);
  RootedTree t;
  t.parent = {-1};
  std::vector<int> frontier = {0};
  while (!frontier.empty() && t.size() < max_vertices) {
    std::vector<int> next;
    for (int v : frontier) {
      if (t.size() >= max_vertices) break;
      int c = 1 + static_cast<int>(rng.uniform_int(max_children));
      for (int i = 0; i < c && t.size() < max_vertices; ++i) {
        t.parent.push_back(v);
        next.push_back(t.size() - 1);
      }
    }
    // Stop expanding a generation with probability growing in depth so
    // trees of varied shapes appear at every seed.
    std::vector<int> keep;
    for (int v : next)
      if (rng.next_double() > 0.25) keep.push_back(v);
    frontier = keep.empty() ? next : keep;
    if (rng.next_double() < 0.08) break;
  }
  return t;
}

}  // namespace hypfill
