// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hypfill/filling.hpp"
#include "hypfill/function_spaces.hpp"
#include "hypfill/generators.hpp"
#include "hypfill/geodesics.hpp"
#include "hypfill/graph_export.hpp"
#include "hypfill/measure.hpp"
#include "hypfill/tree_boundary.hpp"
#include "hypfill/uniformize.hpp"

using namespace hypfill;

namespace {

const double kLn2 = std::log(2.0);

struct Fixture {
  std::string name;
  FiniteMetricSpace space;
};

std::vector<Fixture> standard_fixtures() {
  std::vector<Fixture> f;
  f.push_back({"single-point", FiniteMetricSpace::from_points({{0.0}})});
  f.push_back({"two-point", FiniteMetricSpace::from_matrix({0, 1, 1, 0}, 2, 0.5)});
  f.push_back({"interval_net(17)", interval_net(17)});
  f.push_back({"cantor(4)", cantor(4)});
  f.push_back({"grid(2,5)", grid(2, 5)});
  return f;
}

FillingGraph make_filling(const FiniteMetricSpace& z, double alpha, double tau,
                          int extra = 2, bool counterexample = false) {
  int ns = stabilization_level(z, alpha, tau);
  auto nets = build_nets(z, alpha, ns + extra);
  return FillingGraph::build(z, nets, tau, ns + extra, counterexample);
}

struct Runner {
  int passed = 0, failed = 0;
  void run(int index, const std::string& label, double time_budget_s,
           const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    bool in_budget = secs < time_budget_s;
    ok = ok && in_budget;
    std::printf("criterion %02d %-28s %s (%.2fs%s)%s%s\n", index, label.c_str(),
                ok ? "PASS" : "FAIL", secs, in_budget ? "" : " OVER BUDGET",
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    ok ? ++passed : ++failed;
  }
};

bool rel_close(double a, double b, double tol) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale <= tol;
}

}  // namespace

int main() {
  Runner r;

  // 1. Whitney identity at every vertex on every fixture.
  r.run(1, "whitney-identity", 5.0, [&](std::string& detail) {
    double worst = 0.0;
    for (const auto& fx : standard_fixtures())
      for (double tau : {1.5, 3.0}) {
        auto g = make_filling(fx.space, 2.0, tau);
        auto u = UniformizedFilling::build(g, kLn2);
        for (int id = 0; id < g.vertex_count(); ++id) {
          auto dist = u.dijkstra(id);
          double to_bdry = 1e300;
          for (int p = 0; p < fx.space.size(); ++p)
            to_bdry = std::min(to_bdry, dist[u.boundary_node(p)]);
          worst = std::max(worst, std::abs(to_bdry - u.whitney(id)));
        }
      }
    detail = "max |d(v,bdry) - e^{-eps n}/eps| = " + std::to_string(worst);
    return worst <= 1e-12;
  });

  // 2. Snowflake bounds with zero violations, both eps values.
  r.run(2, "snowflake-bounds", 10.0, [&](std::string& detail) {
    int checked = 0;
    for (const auto& fx : standard_fixtures())
      for (double tau : {1.5, 3.0})
        for (double eps : {kLn2, 0.7 * kLn2}) {
          auto g = make_filling(fx.space, 2.0, tau);
          auto u = UniformizedFilling::build(g, eps);
          auto rep = verify_uniformization(u);
          if (rep.snowflake_max_violation != 0.0 ||
              rep.vertex_bound_max_violation != 0.0)
            return false;
          ++checked;
        }
    detail = std::to_string(checked) + " fixture configurations clean";
    return checked == 20;
  });

  // 3. Tree round trip is an exact level-preserving isomorphism.
  r.run(3, "tree-round-trip", 10.0, [&](std::string& detail) {
    int ok = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto t = random_tree(200, 4, seed);
      for (double tau : {1.2, 1.5}) {  // 1.5 = (1+alpha)/2 for alpha = 2
        ++total;
        auto res = tree_roundtrip_check(t, kLn2, tau);
        if (res.isomorphic) ++ok;
      }
    }
    detail = std::to_string(ok) + "/" + std::to_string(total) + " isomorphic";
    return ok == total;
  });

  // 4. Trace-extension round trip across the (theta, p) sweep.
  r.run(4, "round-trip-identity", 30.0, [&](std::string& detail) {
    double worst = 0.0;
    long long runs = 0;
    for (const auto& fx : standard_fixtures()) {
      auto g = make_filling(fx.space, 2.0, 1.5);
      auto u = UniformizedFilling::build(g, kLn2);
      auto nu = BoundaryMeasure::counting(fx.space.size());
      for (double theta : {0.3, 0.5, 0.7})
        for (double p : {1.0, 2.0, 3.0}) {
          auto sum = verify_trace_extension(u, nu, theta, p, 100, 20260810);
          worst = std::max(worst, sum.max_roundtrip_error);
          runs += 100;
        }
    }
    std::ostringstream os;
    os << runs << " round trips, max error " << worst;
    detail = os.str();
    return worst <= 1e-9;
  });

  // 5. Norm ratios finite (or degenerate) and stable under deeper truncation.
  r.run(5, "norm-ratio-stability", 60.0, [&](std::string& detail) {
    double worst_change = 0.0;
    for (const auto& fx : standard_fixtures()) {
      auto nu = BoundaryMeasure::counting(fx.space.size());
      auto g2 = make_filling(fx.space, 2.0, 1.5, 2);
      auto g4 = make_filling(fx.space, 2.0, 1.5, 4);
      auto u2 = UniformizedFilling::build(g2, kLn2);
      auto u4 = UniformizedFilling::build(g4, kLn2);
      for (double theta : {0.3, 0.5, 0.7})
        for (double p : {1.0, 2.0, 3.0}) {
          auto a = verify_trace_extension(u2, nu, theta, p, 100, 20260810);
          auto b = verify_trace_extension(u4, nu, theta, p, 100, 20260810);
          for (const auto& rep : a.reports) {
            if (std::isinf(rep.ratio_grad_over_besov) ||
                std::isinf(rep.ratio_lp_graph_over_lp_boundary) ||
                std::isinf(rep.ratio_besov_over_grad))
              return false;
          }
          for (double pair : {std::abs(a.max_ratio_grad_over_besov -
                                       b.max_ratio_grad_over_besov) /
                                  std::max(a.max_ratio_grad_over_besov, 1e-300),
                              std::abs(a.max_ratio_lp - b.max_ratio_lp) /
                                  std::max(a.max_ratio_lp, 1e-300),
                              std::abs(a.max_ratio_besov_over_grad -
                                       b.max_ratio_besov_over_grad) /
                                  std::max(a.max_ratio_besov_over_grad, 1e-300)}) {
            if (fx.space.size() == 1) continue;  // all ratios degenerate
            worst_change = std::max(worst_change, pair);
          }
        }
    }
    detail = "max relative change under depth+2: " + std::to_string(worst_change);
    return worst_change < 0.10;
  });

  // 6. Geodesic structure, exhaustively enumerated at tau = 3.
  r.run(6, "geodesic-lemmas", 60.0, [&](std::string& detail) {
    long long pairs = 0;
    for (const auto& z : {interval_net(9), cantor(3)}) {
      int ns = stabilization_level(z, 2.0, 3.0);
      int depth = std::max(ns + 2, 8);
      auto nets = build_nets(z, 2.0, depth);
      auto g = FillingGraph::build(z, nets, 3.0, depth);
      auto rep = geodesic_structure_check(g, 8);
      if (rep.n0 != 5) return false;
      if (!rep.all_passed() || rep.capped_pairs != 0) return false;
      pairs += rep.pairs_checked;
    }
    detail = std::to_string(pairs) + " pairs enumerated, zero violations";
    return true;
  });

  // 7. Non-hyperbolicity regression: the glued slit family.
  r.run(7, "slit-family-growth", 30.0, [&](std::string& detail) {
    std::ostringstream os;
    double prev = -1.0;
    bool increasing = true;
    for (int k = 1; k <= 3; ++k) {
      std::vector<int> depths;
      for (int i = 0; i <= k; ++i) depths.push_back(3 + 2 * i);
      auto z = slit_family(depths);
      auto g = make_filling(z, 2.0, 1.0, 2, true);
      auto h = hyperbolicity_constant(g, 1 << 20, 1);
      if (!h.exhaustive) return false;
      os << (k > 1 ? " < " : "C = ") << h.constant;
      increasing = increasing && h.constant > prev;
      prev = h.constant;
    }
    detail = os.str();
    return increasing;
  });

  // 8. Hyperbolicity soundness: proven bracket, exact tree zero, depth
  //    stability of the four-point constant.
  r.run(8, "hyperbolicity-soundness", 30.0, [&](std::string& detail) {
    for (const auto& fx : standard_fixtures())
      for (double tau : {1.5, 3.0}) {
        auto g = make_filling(fx.space, 2.0, tau);
        auto rep = product_comparison_check(g);  // throws on violation
        if (rep.max_violation != 0.0) return false;
      }
    for (std::uint64_t seed : {2ULL, 5ULL, 11ULL}) {
      auto t = random_tree(120, 3, seed);
      auto tb = tree_boundary_space(t, kLn2, 1.2);
      auto g = make_filling(tb.space, 2.0, 1.2);
      auto h = hyperbolicity_constant(g, 1 << 20, 1);
      if (h.constant != 0.0) return false;
    }
    double worst = 0.0;
    for (const auto& fx : standard_fixtures()) {
      auto h2 = hyperbolicity_constant(make_filling(fx.space, 2.0, 1.5, 2), 1 << 20, 1);
      auto h4 = hyperbolicity_constant(make_filling(fx.space, 2.0, 1.5, 4), 1 << 20, 1);
      worst = std::max(worst, std::abs(h2.constant - h4.constant));
    }
    detail = "max |C(N*+2) - C(N*+4)| = " + std::to_string(worst);
    return worst < 0.5;
  });

  // 9. Measure theorems: neighbor-mass bound, codimension band, doubling.
  r.run(9, "measure-theorems", 60.0, [&](std::string& detail) {
    double worst_band = 0.0, worst_doubling = 0.0;
    for (const auto& fx : standard_fixtures()) {
      auto nu = BoundaryMeasure::counting(fx.space.size());
      auto g2 = make_filling(fx.space, 2.0, 1.5, 2);
      auto g4 = make_filling(fx.space, 2.0, 1.5, 4);
      auto u2 = UniformizedFilling::build(g2, kLn2);
      auto u4 = UniformizedFilling::build(g4, kLn2);
      auto m2 = lift_measure(u2, nu, 1.0);
      auto m4 = lift_measure(u4, nu, 1.0);
      auto r2 = verify_measure(m2, 512, 20260810);  // throws on edge violation
      auto r4 = verify_measure(m4, 512, 20260810);
      if (!(std::isfinite(r2.doubling_max) && std::isfinite(r4.doubling_max)))
        return false;
      if (fx.space.size() > 1) {
        if (!(r2.codim_lo > 0.0 && std::isfinite(r2.codim_hi))) return false;
        worst_band = std::max(
            {worst_band,
             std::abs(r2.codim_lo - r4.codim_lo) / r2.codim_lo,
             std::abs(r2.codim_hi - r4.codim_hi) / r2.codim_hi});
      }
      worst_doubling =
          std::max(worst_doubling,
                   std::abs(r2.doubling_max - r4.doubling_max) / r2.doubling_max);
    }
    std::ostringstream os;
    os << "band drift " << worst_band << ", doubling drift " << worst_doubling;
    detail = os.str();
    return worst_band < 0.15 && worst_doubling < 0.15;
  });

  // 10. Numerical self-consistency: quadrature orders, summation order,
  //     byte-identical reports for identical seeds.
  r.run(10, "numerical-self-consistency", 10.0, [&](std::string& detail) {
    auto z = cantor(4);
    auto g = make_filling(z, 2.0, 1.5);
    auto u = UniformizedFilling::build(g, kLn2);
    auto nu = BoundaryMeasure::counting(z.size());
    auto m = lift_measure(u, nu, 1.0);

    double worst_quad = 0.0;
    for (double p : {1.0, 2.0, 3.0})
      for (std::uint64_t s : {1ULL, 2ULL}) {
        auto f = random_graph_function(g, s);
        auto a = newtonian_norm(f, m, p, 16);
        auto b = newtonian_norm(f, m, p, 32);
        worst_quad =
            std::max(worst_quad, std::abs(a.lp - b.lp) / std::max(a.lp, b.lp));
      }
    if (worst_quad > 1e-10) return false;

    // Total mass, re-summed in reverse order including tails first.
    double total = 0.0;
    for (int p = z.size() - 1; p >= 0; --p) total += m.tail_mass(p);
    for (int i = static_cast<int>(g.edges().size()) - 1; i >= 0; --i)
      total += m.edge_density(i);
    if (std::abs(total - m.total_mass()) > 1e-12 * m.total_mass()) return false;

    // Identical seeds give byte-identical serialized reports.
    auto render = [&]() {
      std::ostringstream os;
      auto rep = verify_measure(m, 256, 424242);
      auto sum = verify_trace_extension(u, nu, 0.5, 2.0, 25, 424242);
      os.precision(17);
      os << rep.doubling_max << "|" << rep.codim_lo << "|" << rep.codim_hi << "|"
         << rep.s_nu << "|" << rep.eta << "|" << sum.max_roundtrip_error << "|"
         << sum.max_ratio_grad_over_besov << "|" << sum.max_ratio_lp << "|"
         << sum.max_ratio_besov_over_grad << "|" << measure_to_json(m)
         << filling_to_json(g);
      return os.str();
    };
    std::string r1 = render(), r2 = render();
    if (r1 != r2) return false;

    std::ostringstream os;
    os << "quadrature drift " << worst_quad << ", reports byte-identical";
    detail = os.str();
    return true;
  });

  std::printf("ACCEPTANCE: %d/%d criteria passed\n", r.passed, r.passed + r.failed);
  return r.failed == 0 ? 0 : 1;
}
