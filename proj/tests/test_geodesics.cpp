#include <doctest.h>

#include <cmath>

#include "hypfill/generators.hpp"
#include "hypfill/geodesics.hpp"

using namespace hypfill;

namespace {

FillingGraph make_filling(const FiniteMetricSpace& z, double alpha, double tau,
                          int min_depth) {
  int ns = stabilization_level(z, alpha, tau);
  int depth = std::max(ns + 2, min_depth);
  auto nets = build_nets(z, alpha, depth);
  return FillingGraph::build(z, nets, tau, depth);
}

}  // namespace

TEST_CASE("horizontal bound level n0: iterate the defining inequality") {
  // Oracle: walk n upward until n alpha^{1-n} <= 1/(alpha+1).
  for (double alpha : {2.0, 3.0, 1.5}) {
    int n = 1;
    while (n * std::pow(alpha, 1.0 - n) > 1.0 / (alpha + 1.0)) ++n;
    CHECK(horizontal_geodesic_bound_n0(alpha) == n);
  }
  CHECK(horizontal_geodesic_bound_n0(2.0) == 5);
}

TEST_CASE("interior level maxima are detected wherever they hide") {
  CHECK(!has_interior_level_max({3, 2, 1, 0}));
  CHECK(!has_interior_level_max({0, 1, 2, 3}));
  CHECK(!has_interior_level_max({3, 2, 2, 3}));
  CHECK(!has_interior_level_max({2, 2, 2}));
  CHECK(has_interior_level_max({2, 3, 2}));
  CHECK(has_interior_level_max({3, 2, 3, 4, 3}));  // max after an early dip
  CHECK(has_interior_level_max({0, 1, 1, 0}));
  CHECK(!has_interior_level_max({1, 0, 0, 1}));
}

TEST_CASE("regime guard") {
  auto z = interval_net(5);
  auto g = make_filling(z, 2.0, 1.5, 0);  // tau below (alpha+1)/(alpha-1) = 3
  CHECK_THROWS_AS(geodesic_structure_check(g), NotInRegime);
}

TEST_CASE("tree fillings pass vacuously") {
  auto z = FiniteMetricSpace::from_points({{0.0}});
  auto g = make_filling(z, 2.0, 3.0, 6);
  auto rep = geodesic_structure_check(g);
  CHECK(rep.all_passed());
  CHECK(rep.witnesses.empty());
  CHECK_NOTHROW(rep.require_clean());
}

TEST_CASE("interval net at tau = 3: exhaustive enumeration is clean") {
  auto z = interval_net(9);
  auto g = make_filling(z, 2.0, 3.0, 8);
  auto rep = geodesic_structure_check(g, 8);
  CHECK(rep.n0 == 5);
  CHECK(rep.no_spike);
  CHECK(rep.no_ladder);
  CHECK(rep.no_down_up);
  CHECK(rep.horizontal_bounded);
  CHECK(rep.normal_form_exists);
  CHECK(rep.capped_pairs == 0);
  CHECK(rep.pairs_checked > 0);
}

TEST_CASE("cantor net at tau = 3 is clean to depth 8") {
  auto g = make_filling(cantor(3), 2.0, 3.0, 8);
  auto rep = geodesic_structure_check(g, 8);
  CHECK(rep.all_passed());
}

TEST_CASE("enumeration respects the per-pair cap") {
  auto g = make_filling(interval_net(9), 2.0, 3.0, 8);
  auto rep = geodesic_structure_check(g, 6, 2);
  CHECK(rep.capped_pairs > 0);  // reported, not silently dropped
}
