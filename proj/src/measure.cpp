#include "hypfill/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypfill/rng.hpp"

namespace hypfill {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double BoundaryMeasure::total() const {
  double t = 0.0;
  for (double w : weight) t += w;
  return t;
}

double BoundaryMeasure::ball(const FiniteMetricSpace& space, int center,
                             double r) const {
  double t = 0.0;
  for (int i = 0; i < space.size(); ++i)
    if (space.dist(i, center) < r) t += weight[i];
  return t;
}

BoundaryMeasure BoundaryMeasure::counting(int n) {
  return BoundaryMeasure{std::vector<double>(n, 1.0)};
}

void BoundaryMeasure::validate(int n_points) const {
  if (static_cast<int>(weight.size()) != n_points)
    throw BadParams("measure atom count does not match point count");
  for (double w : weight)
    if (!(w > 0.0) || !std::isfinite(w))
      throw BadParams("measure atoms must be positive and finite");
}

LiftedMeasure LiftedMeasure::build(const UniformizedFilling& u, BoundaryMeasure nu,
                                   double beta) {
  if (!(beta > 0.0)) throw BadBeta("beta must be positive");
  const FillingGraph& g = u.graph();
  nu.validate(g.space().size());

  LiftedMeasure m;
  m.u_ = u;
  m.nu_ = std::move(nu);
  m.beta_ = beta;

  m.muhat_.resize(g.vertex_count());
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    m.muhat_[id] =
        m.nu_.ball(g.space(), v.point, std::pow(g.alpha(), -v.level));
  }

  const auto& edges = g.edges();
  m.density_.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    double ru = std::exp(-beta * g.vertex(e.u).level) * m.muhat_[e.u];
    double rv = std::exp(-beta * g.vertex(e.v).level) * m.muhat_[e.v];
    m.density_[i] = 2.0 * (ru + rv);
  }

  int N = g.truncation_level();
  m.tail_.resize(g.space().size());
  for (int p = 0; p < g.space().size(); ++p)
    m.tail_[p] = 2.0 * m.nu_.weight[p] * (1.0 + std::exp(-beta)) *
                 std::exp(-beta * N) / (1.0 - std::exp(-beta));

  m.total_ = 0.0;
  for (double d : m.density_) m.total_ += d;
  for (double t : m.tail_) m.total_ += t;
  return m;
}

LiftedMeasure lift_measure(const UniformizedFilling& u, BoundaryMeasure nu,
                           double beta) {
  return LiftedMeasure::build(u, std::move(nu), beta);
}

namespace {

// Covered mass of the ray tail below (z, N): s_top is the leftover radius at
// the tail top, s_bot at the boundary node. The tail is a chain of vertical
// edges m = N, N+1, ... whose densities and arc lengths decay geometrically,
// so full remainders are closed-form sums.
double tail_cover_mass(double w, double eps, double beta, int N, double s_top,
                       double s_bot) {
  if (s_top <= 0.0 && s_bot <= 0.0) return 0.0;
  double dens_c = 2.0 * w * (1.0 + std::exp(-beta));
  auto dens = [&](int m) { return dens_c * std::exp(-beta * m); };
  auto rest = [&](int m) { return dens(m) / (1.0 - std::exp(-beta)); };

  // Bottom coverage reaches every level coordinate past c.
  double c = s_bot > 0.0 ? -std::log(eps * s_bot) / eps : kInf;
  if (c <= N) return rest(N);

  double top_arc = std::exp(-eps * N) / eps;  // arc from tail top to boundary
  double mass = 0.0;
  for (int m = N;; ++m) {
    double arc_below = std::exp(-eps * m) / eps;
    double b_top = s_top - (top_arc - arc_below);
    if (b_top >= arc_below) return mass + rest(m);
    if (c <= m) return mass + rest(m);
    if (b_top <= 0.0) {
      if (c == kInf) return mass;
      int mp = static_cast<int>(std::floor(c));
      return mass + dens(mp) * (1.0 - (c - mp)) + rest(mp + 1);
    }
    EdgeGeom geom{EdgeKind::Vertical, m, eps};
    double x = geom.t_at_arc(std::min(b_top, geom.length()));
    double y = (c < m + 1) ? (c - m) : 1.0;
    mass += dens(m) * (x >= y ? 1.0 : x + 1.0 - y);
  }
}

double merged_length(std::vector<std::pair<double, double>>& iv) {
  std::sort(iv.begin(), iv.end());
  double len = 0.0, hi = -1.0;
  for (auto [a, b] : iv) {
    if (a > hi) {
      len += b - a;
      hi = b;
    } else if (b > hi) {
      len += b - hi;
      hi = b;
    }
  }
  return len;
}

}  // namespace

BallCover LiftedMeasure::cover(const std::vector<double>& dist, double r) const {
  const UniformizedFilling& u = u_;
  const FillingGraph& g = u.graph();
  BallCover c;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    double len = u.edge_length(static_cast<int>(i));
    double su = std::clamp(r - dist[e.u], 0.0, len);
    double sv = std::clamp(r - dist[e.v], 0.0, len);
    if (su <= 0.0 && sv <= 0.0) continue;
    if (su + sv >= len) {
      c.intervals.push_back({static_cast<int>(i), 0.0, 1.0});
      continue;
    }
    EdgeGeom geom = u.edge_geom(static_cast<int>(i));
    std::vector<std::pair<double, double>> iv;
    if (su > 0.0) iv.push_back({0.0, geom.t_at_arc(su)});
    if (sv > 0.0) iv.push_back({geom.t_at_arc(len - sv), 1.0});
    std::sort(iv.begin(), iv.end());
    for (auto [a, b] : iv)
      if (b > a) c.intervals.push_back({static_cast<int>(i), a, b});
  }
  int N = g.truncation_level();
  for (int p = 0; p < g.space().size(); ++p) {
    double s_top = r - dist[g.vertex_id(p, N)];
    double s_bot = r - dist[u.boundary_node(p)];
    double tm = tail_cover_mass(nu_.weight[p], u.eps(), beta_, N, s_top, s_bot);
    if (tm > 0.0) c.tail_mass.push_back({p, tm});
  }
  return c;
}

double LiftedMeasure::cover_mass(const BallCover& c) const {
  double mass = 0.0;
  for (const auto& iv : c.intervals) mass += density_[iv.edge] * (iv.t1 - iv.t0);
  for (auto [p, tm] : c.tail_mass) mass += tm;
  return mass;
}

double LiftedMeasure::ball_mass(int node, double r) const {
  return cover_mass(cover(u_.dijkstra(node), r));
}

double LiftedMeasure::ball_mass_at_edge_point(int edge_index, double t,
                                              double r) const {
  const UniformizedFilling& u = u_;
  auto dist = u.dijkstra_from_edge_point(edge_index, t);
  BallCover c = cover(dist, r);

  // The generic per-edge rule reaches the center's own edge only through its
  // endpoints; add the direct interval around the center and re-merge.
  EdgeGeom geom = u.edge_geom(edge_index);
  double len = geom.length(), sc = geom.arc(t);
  double lo = std::max(sc - r, 0.0), hi = std::min(sc + r, len);
  if (hi > lo) {
    std::vector<std::pair<double, double>> iv = {
        {geom.t_at_arc(lo), geom.t_at_arc(hi)}};
    double mass_other = 0.0;
    for (const auto& i : c.intervals) {
      if (i.edge == edge_index)
        iv.push_back({i.t0, i.t1});
      else
        mass_other += density_[i.edge] * (i.t1 - i.t0);
    }
    for (auto [p, tm] : c.tail_mass) mass_other += tm;
    return mass_other + density_[edge_index] * merged_length(iv);
  }
  return cover_mass(c);
}

MeasureReport verify_measure(const LiftedMeasure& m, int samples,
                             std::uint64_t seed) {
  const UniformizedFilling& u = m.unif();
  const FillingGraph& g = u.graph();
  const FiniteMetricSpace& Z = g.space();
  const double alpha = g.alpha(), tau = g.tau(), eps = u.eps();

  MeasureReport rep;
  rep.samples = samples;
  rep.seed = seed;

  int N = 0;
  while (std::exp2(N) < alpha * (1.0 + tau) + tau) ++N;
  rep.neighbor_exponent = N;
  rep.doubling_constant = doubling_constant_estimate(Z, m.boundary().weight);
  rep.neighbor_bound = std::pow(rep.doubling_constant, N);
  for (const Edge& e : g.edges()) {
    double a = m.vertex_mass(e.u), b = m.vertex_mass(e.v);
    double ratio = std::max(a / b, b / a);
    rep.neighbor_max_ratio = std::max(rep.neighbor_max_ratio, ratio);
  }
  if (rep.neighbor_max_ratio > rep.neighbor_bound * (1.0 + 1e-12))
    throw NeighborMassViolation("edge endpoint masses exceed the doubling bound");

  // Sweep centers: all boundary nodes plus vertices down to stabilization.
  std::vector<int> centers;
  for (int id = 0; id < g.vertex_count(); ++id)
    if (g.vertex(id).level <= g.stabilization_level()) centers.push_back(id);
  for (int p = 0; p < Z.size(); ++p) centers.push_back(u.boundary_node(p));

  std::vector<std::vector<double>> cdist(centers.size());
  double diam_eps = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    cdist[i] = u.dijkstra(centers[i]);
    for (double d : cdist[i]) diam_eps = std::max(diam_eps, d);
  }
  // Radius floor pinned at the stabilization scale so the sweep is a
  // truncation-independent function of the seed.
  double min_len =
      EdgeGeom{EdgeKind::Vertical, g.stabilization_level(), eps}.length();

  Rng rng(seed);
  double rlo = min_len / 4.0, rhi = 2.0 * diam_eps;
  rep.doubling_max = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::size_t ci = rng.uniform_int(centers.size());
    double r = rng.log_uniform(rlo, rhi / 2.0);
    double small = m.cover_mass(m.cover(cdist[ci], r));
    double big = m.cover_mass(m.cover(cdist[ci], 2.0 * r));
    if (small > 0.0) rep.doubling_max = std::max(rep.doubling_max, big / small);
  }

  // Codimension band over boundary centers.
  rep.codim_lo = kInf;
  rep.codim_hi = 0.0;
  int nb = Z.size();
  int radii = std::max(4, samples / std::max(nb, 1));
  for (int p = 0; p < nb; ++p) {
    const auto& dist = cdist[centers.size() - nb + p];
    for (int k = 0; k < radii; ++k) {
      double r = rng.log_uniform(rlo, rhi);
      if (!(r <= 2.0 * diam_eps)) continue;
      double mass = m.cover_mass(m.cover(dist, r));
      double zball =
          m.boundary().ball(Z, p, std::pow(eps * r, 1.0 / u.sigma()));
      double ref = std::pow(eps * r, m.beta() / eps) * zball;
      if (ref > 0.0 && mass > 0.0) {
        rep.codim_lo = std::min(rep.codim_lo, mass / ref);
        rep.codim_hi = std::max(rep.codim_hi, mass / ref);
      }
    }
  }

  // Dimension exponents from extremal log-ratios of nested balls.
  rep.s_nu = 0.0;
  rep.eta = kInf;
  if (Z.size() > 1) {
    for (int s = 0; s < samples; ++s) {
      int p = static_cast<int>(rng.uniform_int(Z.size()));
      double r = rng.log_uniform(Z.min_sep() / 2.0, 2.0 * Z.diam());
      double rp = r * rng.uniform(0.05, 0.95);
      double hi = m.boundary().ball(Z, p, r), lo = m.boundary().ball(Z, p, rp);
      if (!(lo > 0.0) || !(hi > 0.0)) continue;
      double q = std::log(lo / hi) / std::log(rp / r);
      rep.s_nu = std::max(rep.s_nu, q);
      rep.eta = std::min(rep.eta, q);
    }
  } else {
    rep.eta = 0.0;
  }
  rep.s_beta_target = std::max(1.0, m.beta() / eps + rep.s_nu);

  rep.s_beta_min_const = kInf;
  for (int s = 0; s < samples; ++s) {
    std::size_t ci = rng.uniform_int(centers.size());
    double r = rng.log_uniform(rlo, rhi);
    double rp = r * rng.uniform(0.05, 0.95);
    double hi = m.cover_mass(m.cover(cdist[ci], r));
    double lo = m.cover_mass(m.cover(cdist[ci], rp));
    if (!(lo > 0.0) || !(hi > 0.0)) continue;
    rep.s_beta_min_const = std::min(
        rep.s_beta_min_const, (lo / hi) / std::pow(rp / r, rep.s_beta_target));
  }
  return rep;
}

namespace {

// Integral of (u - c) over a covered edge interval, signed or absolute;
// u is linear in arc length between the endpoint values.
double edge_deviation_integral(const LiftedMeasure& m, int ei, double t0,
                               double t1, double c, const FunctionWithGradient& f,
                               bool absolute) {
  const UniformizedFilling& u = m.unif();
  const Edge& e = u.graph().edges()[ei];
  EdgeGeom geom = u.edge_geom(ei);
  double len = geom.length();
  double u0 = f.value[e.u], du = f.value[e.v] - u0;
  auto signed_part = [&](double a, double b) {
    return (u0 - c) * (b - a) + (du / len) * geom.arc_integral(a, b);
  };
  if (!absolute) return signed_part(t0, t1);
  double total = 0.0;
  std::vector<double> cuts = {t0, t1};
  if (du != 0.0) {
    double star = (c - u0) * len / du;
    if (star > 0.0 && star < len) {
      double ts = geom.t_at_arc(star);
      if (ts > t0 && ts < t1) cuts.insert(cuts.begin() + 1, ts);
    }
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += std::abs(signed_part(cuts[i], cuts[i + 1]));
  return total;
}

}  // namespace

double poincare_quotient(const LiftedMeasure& m, const FunctionWithGradient& f,
                         const std::vector<double>& node_dist, double r) {
  const FillingGraph& g = m.unif().graph();
  BallCover cov = m.cover(node_dist, r);
  double mass = m.cover_mass(cov);
  if (!(mass > 0.0)) return 0.0;
  int N = g.truncation_level();

  double mean = 0.0;
  for (const auto& iv : cov.intervals)
    mean += m.edge_density(iv.edge) *
            edge_deviation_integral(m, iv.edge, iv.t0, iv.t1, 0.0, f, false);
  for (auto [p, tm] : cov.tail_mass) mean += tm * f.value[g.vertex_id(p, N)];
  mean /= mass;

  double osc = 0.0, grad = 0.0;
  for (const auto& iv : cov.intervals) {
    osc += m.edge_density(iv.edge) *
           edge_deviation_integral(m, iv.edge, iv.t0, iv.t1, mean, f, true);
    grad += m.edge_density(iv.edge) * f.gradient[iv.edge] * (iv.t1 - iv.t0);
  }
  for (auto [p, tm] : cov.tail_mass)
    osc += tm * std::abs(f.value[g.vertex_id(p, N)] - mean);
  return grad > 0.0 ? (osc / mass) / (r * grad / mass) : 0.0;
}

double poincare_ratio(const LiftedMeasure& m,
                      const std::vector<FunctionWithGradient>& functions,
                      int ball_samples, std::uint64_t seed) {
  const UniformizedFilling& u = m.unif();
  const FillingGraph& g = u.graph();
  const auto& edges = g.edges();

  for (const auto& f : functions) {
    if (static_cast<int>(f.value.size()) != g.vertex_count() ||
        f.gradient.size() != edges.size())
      throw GradientMismatch("function/gradient sizes do not match the graph");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      double expect = std::abs(f.value[edges[i].u] - f.value[edges[i].v]) /
                      u.edge_length(static_cast<int>(i));
      double got = f.gradient[i];
      double scale = std::max({1.0, expect, got});
      if (std::abs(expect - got) > 1e-9 * scale)
        throw GradientMismatch("supplied gradient is not |du|/len on an edge");
    }
  }

  std::vector<int> centers;
  for (int id = 0; id < g.vertex_count(); ++id)
    if (g.vertex(id).level <= g.stabilization_level()) centers.push_back(id);
  for (int p = 0; p < g.space().size(); ++p) centers.push_back(u.boundary_node(p));

  double min_len =
      EdgeGeom{EdgeKind::Vertical, g.stabilization_level(), u.eps()}.length();

  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < ball_samples; ++s) {
    int ci = static_cast<int>(rng.uniform_int(centers.size()));
    auto dist = u.dijkstra(centers[ci]);
    double r = rng.log_uniform(min_len / 4.0, 2.0 / u.eps());
    for (const auto& f : functions)
      worst = std::max(worst, poincare_quotient(m, f, dist, r));
  }
  return worst;
}

}  // namespace hypfill
