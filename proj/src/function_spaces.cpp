#include "hypfill/function_spaces.hpp"

#include <algorithm>
#include <cmath>

#include "hypfill/rng.hpp"

namespace hypfill {

namespace {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on the Legendre
// polynomial; deterministic and accurate to machine precision.
struct GaussRule {
  std::vector<double> node, weight;
  explicit GaussRule(int n) {
    node.resize(n);
    weight.resize(n);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      node[n - 1 - i] = 0.5 * (x + 1.0);
      weight[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussRule& gauss_rule(int order) {
  static const GaussRule g16(16), g32(32);
  if (order == 16) return g16;
  if (order == 32) return g32;
  static thread_local GaussRule custom(2);
  custom = GaussRule(order);
  return custom;
}

}  // namespace

double besov_energy(const FiniteMetricSpace& space, const BoundaryMeasure& nu,
                    const BoundaryFunction& f, double theta, double p,
                    BesovMethod method, double alpha) {
  if (!(p >= 1.0)) throw BadParams("p must be at least 1");
  if (!(theta > 0.0)) throw BadParams("theta must be positive");
  nu.validate(space.size());
  if (static_cast<int>(f.value.size()) != space.size())
    throw BadParams("function size does not match space");
  int n = space.size();
  if (n == 1) return 0.0;

  if (method == BesovMethod::Direct) {
    double total = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        double d = space.dist(a, b);
        double diff = std::abs(f.value[a] - f.value[b]);
        if (diff == 0.0) continue;
        total += nu.weight[a] * nu.weight[b] * std::pow(diff, p) /
                 (std::pow(d, p * theta) * nu.ball(space, a, d));
      }
    return total;
  }

  // Dyadic form: averaged differences over balls B(a, alpha^{-k}) summed
  // against alpha^{k theta p}; scales with radius below the separation
  // contribute nothing and are omitted.
  int k_iso = isolation_level(space, alpha);
  double total = 0.0;
  for (int k = 0; k < k_iso; ++k) {
    double r = std::pow(alpha, -k);
    double scale = std::pow(alpha, k * theta * p);
    for (int a = 0; a < n; ++a) {
      double ball = nu.ball(space, a, r);
      double acc = 0.0;
      for (int b = 0; b < n; ++b)
        if (space.dist(a, b) < r && b != a)
          acc += nu.weight[b] * std::pow(std::abs(f.value[a] - f.value[b]), p);
      total += scale * nu.weight[a] * acc / ball;
    }
  }
  return total;
}

double lp_energy_boundary(const BoundaryMeasure& nu, const BoundaryFunction& f,
                          double p) {
  double t = 0.0;
  for (std::size_t i = 0; i < nu.weight.size(); ++i)
    t += nu.weight[i] * std::pow(std::abs(f.value[i]), p);
  return t;
}

NewtonianResult newtonian_norm(const GraphFunction& u, const LiftedMeasure& m,
                               double p, int quad_order) {
  if (!(p >= 1.0)) throw BadParams("p must be at least 1");
  const UniformizedFilling& unif = m.unif();
  const FillingGraph& g = unif.graph();
  if (static_cast<int>(u.value.size()) != g.vertex_count())
    throw BadParams("function size does not match graph");
  const auto& rule = gauss_rule(quad_order);
  const auto& edges = g.edges();

  NewtonianResult res;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    double len = unif.edge_length(static_cast<int>(i));
    double mass = m.edge_density(static_cast<int>(i));
    double u0 = u.value[e.u], u1 = u.value[e.v];
    double slope = (u1 - u0) / len;  // du/ds, the minimal upper gradient

    res.gradient_energy += std::pow(std::abs(slope), p) * mass;

    EdgeGeom geom = unif.edge_geom(static_cast<int>(i));
    std::vector<double> cuts = {0.0, 1.0};
    if (e.kind == EdgeKind::Horizontal) cuts.insert(cuts.begin() + 1, 0.5);
    if (u0 * u1 < 0.0) {
      double ts = geom.t_at_arc(-u0 / slope);
      cuts.push_back(ts);
      std::sort(cuts.begin(), cuts.end());
    }
    double integral = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      double a = cuts[c], b = cuts[c + 1];
      if (b <= a) continue;
      double piece = 0.0;
      for (int q = 0; q < quad_order; ++q) {
        double t = a + (b - a) * rule.node[q];
        double val = u0 + slope * geom.arc(t);
        piece += rule.weight[q] * std::pow(std::abs(val), p);
      }
      integral += piece * (b - a);
    }
    res.lp += mass * integral;
  }
  int N = g.truncation_level();
  for (int pt = 0; pt < g.space().size(); ++pt)
    res.lp += std::pow(std::abs(u.value[g.vertex_id(pt, N)]), p) * m.tail_mass(pt);
  res.norm = std::pow(res.lp + res.gradient_energy, 1.0 / p);
  return res;
}

TraceResult trace(const FillingGraph& g, const GraphFunction& u) {
  if (static_cast<int>(u.value.size()) != g.vertex_count())
    throw BadParams("function size does not match graph");
  const FiniteMetricSpace& Z = g.space();
  int N = g.truncation_level();
  TraceResult res;
  res.trace.value.resize(Z.size());
  res.sequence.assign(Z.size(), std::vector<double>(N + 1, 0.0));
  for (int zeta = 0; zeta < Z.size(); ++zeta) {
    for (int n = 0; n <= N; ++n) {
      double r = std::pow(g.alpha(), -n);
      double acc = 0.0;
      int cnt = 0;
      for (int pt : g.nets().levels[n])
        if (Z.dist(pt, zeta) < r) {
          acc += u.value[g.vertex_id(pt, n)];
          ++cnt;
        }
      res.sequence[zeta][n] = acc / cnt;
    }
    res.trace.value[zeta] = u.value[g.vertex_id(zeta, N)];
  }
  return res;
}

GraphFunction extend(const FillingGraph& g, const BoundaryMeasure& nu,
                     const BoundaryFunction& f) {
  const FiniteMetricSpace& Z = g.space();
  nu.validate(Z.size());
  if (static_cast<int>(f.value.size()) != Z.size())
    throw BadParams("function size does not match space");
  GraphFunction u;
  u.value.resize(g.vertex_count());
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    double r = std::pow(g.alpha(), -v.level);
    double acc = 0.0, mass = 0.0;
    for (int b = 0; b < Z.size(); ++b)
      if (Z.dist(b, v.point) < r) {
        acc += nu.weight[b] * f.value[b];
        mass += nu.weight[b];
      }
    u.value[id] = acc / mass;
  }
  return u;
}

BoundaryFunction random_boundary_function(const FiniteMetricSpace& space,
                                          std::uint64_t seed,
                                          BoundaryProfile profile,
                                          double exponent) {
  Rng rng(seed);
  BoundaryFunction f;
  f.value.resize(space.size());
  if (profile == BoundaryProfile::Uniform) {
    for (double& v : f.value) v = rng.uniform(-1.0, 1.0);
  } else {
    int anchor = static_cast<int>(rng.uniform_int(space.size()));
    for (int i = 0; i < space.size(); ++i)
      f.value[i] = std::pow(space.dist(i, anchor), exponent);
  }
  return f;
}

GraphFunction random_graph_function(const FillingGraph& g, std::uint64_t seed) {
  Rng base(seed);
  GraphFunction u;
  u.value.resize(g.vertex_count());
  int cutoff = g.stabilization_level();
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    int lv = std::min(v.level, cutoff);
    // Value depends on (point, capped level) only, so deepening the
    // truncation never changes the function.
    Rng r = base.split((static_cast<std::uint64_t>(v.point) << 20) ^
                       static_cast<std::uint64_t>(lv));
    u.value[id] = r.uniform(-1.0, 1.0);
  }
  return u;
}

TraceExtensionSummary verify_trace_extension(const UniformizedFilling& u,
                                             const BoundaryMeasure& nu,
                                             double theta, double p,
                                             int n_functions, std::uint64_t seed) {
  if (!(theta > 0.0 && theta < 1.0)) throw BadParams("theta must lie in (0,1)");
  const FillingGraph& g = u.graph();
  const double eps = u.eps();
  const double beta = eps * p * (1.0 - theta);
  LiftedMeasure m = lift_measure(u, nu, beta);
  const double nan = std::nan("");

  TraceExtensionSummary sum;
  Rng master(seed);
  for (int i = 0; i < n_functions; ++i) {
    std::uint64_t fs = master.next_u64();
    BoundaryFunction f = random_boundary_function(g.space(), fs);
    GraphFunction ef = extend(g, nu, f);
    TraceResult tr = trace(g, ef);

    EnergyReport rep;
    rep.kind = "extension";
    rep.seed = fs;
    rep.theta = theta;
    rep.p = p;
    rep.beta = beta;
    rep.eps = eps;
    for (int z = 0; z < g.space().size(); ++z)
      rep.roundtrip_error =
          std::max(rep.roundtrip_error, std::abs(tr.trace.value[z] - f.value[z]));
    sum.max_roundtrip_error = std::max(sum.max_roundtrip_error, rep.roundtrip_error);
    if (rep.roundtrip_error > 1e-9)
      throw RoundTripFailure("trace(extend(f)) differs from f beyond 1e-9");

    rep.besov_seminorm_p = besov_energy(g.space(), nu, f, theta, p);
    rep.lp_boundary = lp_energy_boundary(nu, f, p);
    NewtonianResult nr = newtonian_norm(ef, m, p);
    rep.newtonian_gradient_energy = nr.gradient_energy;
    rep.lp_graph = nr.lp;
    rep.ratio_grad_over_besov =
        rep.besov_seminorm_p > 0.0 ? nr.gradient_energy / rep.besov_seminorm_p : nan;
    rep.ratio_lp_graph_over_lp_boundary =
        rep.lp_boundary > 0.0 ? nr.lp / rep.lp_boundary : nan;
    rep.ratio_besov_over_grad = nan;
    rep.ratio_lp_trace = nan;
    if (std::isnan(rep.ratio_grad_over_besov)) ++sum.degenerate;
    if (!std::isnan(rep.ratio_grad_over_besov))
      sum.max_ratio_grad_over_besov =
          std::max(sum.max_ratio_grad_over_besov, rep.ratio_grad_over_besov);
    if (!std::isnan(rep.ratio_lp_graph_over_lp_boundary))
      sum.max_ratio_lp = std::max(sum.max_ratio_lp, rep.ratio_lp_graph_over_lp_boundary);
    sum.reports.push_back(std::move(rep));
  }

  for (int i = 0; i < n_functions; ++i) {
    std::uint64_t fs = master.next_u64();
    GraphFunction gu = random_graph_function(g, fs);
    TraceResult tr = trace(g, gu);

    EnergyReport rep;
    rep.kind = "trace";
    rep.seed = fs;
    rep.theta = theta;
    rep.p = p;
    rep.beta = beta;
    rep.eps = eps;
    rep.besov_seminorm_p = besov_energy(g.space(), nu, tr.trace, theta, p);
    rep.lp_boundary = lp_energy_boundary(nu, tr.trace, p);
    NewtonianResult nr = newtonian_norm(gu, m, p);
    rep.newtonian_gradient_energy = nr.gradient_energy;
    rep.lp_graph = nr.lp;
    rep.ratio_grad_over_besov = nan;
    rep.ratio_lp_graph_over_lp_boundary = nan;
    double grad_norm = std::pow(nr.gradient_energy, 1.0 / p);
    rep.ratio_besov_over_grad =
        grad_norm > 0.0 ? std::pow(rep.besov_seminorm_p, 1.0 / p) / grad_norm : nan;
    double denom = std::abs(gu.value[g.root_id()]) + grad_norm;
    rep.ratio_lp_trace =
        denom > 0.0 ? std::pow(rep.lp_boundary, 1.0 / p) / denom : nan;
    if (std::isnan(rep.ratio_besov_over_grad)) ++sum.degenerate;
    if (!std::isnan(rep.ratio_besov_over_grad))
      sum.max_ratio_besov_over_grad =
          std::max(sum.max_ratio_besov_over_grad, rep.ratio_besov_over_grad);
    sum.reports.push_back(std::move(rep));
  }
  return sum;
}

}  // namespace hypfill
