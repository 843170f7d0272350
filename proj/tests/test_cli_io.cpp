#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <json.hpp>

#include "hypfill/generators.hpp"
#include "hypfill/graph_export.hpp"
#include "hypfill/io.hpp"

using namespace hypfill;

namespace {

FillingGraph make_filling(const FiniteMetricSpace& z, double alpha, double tau) {
  int ns = stabilization_level(z, alpha, tau);
  auto nets = build_nets(z, alpha, ns + 2);
  return FillingGraph::build(z, nets, tau, ns + 2);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("space files round trip through JSON") {
  auto s = cantor(3);
  auto path = temp_path("hypfill_space.json");
  write_space(path, s);
  auto back = read_space(path);
  REQUIRE(back.size() == s.size());
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j)
      CHECK(back.dist(i, j) == doctest::Approx(s.dist(i, j)).epsilon(1e-12));
}

TEST_CASE("point CSV is accepted and NaN or negatives are rejected") {
  auto path = temp_path("hypfill_points.csv");
  write_text(path, "id,x1\na,0\nb,1\nc,3\n");
  auto s = read_space(path);
  CHECK(s.size() == 3);
  CHECK(s.label(0) == "a");
  CHECK(s.diam() == doctest::Approx(0.5));

  write_text(path, "id,x1\na,0\nb,nan\n");
  CHECK_THROWS_AS(read_space(path), IoError);

  auto mpath = temp_path("hypfill_matrix.json");
  write_text(mpath, R"({"labels":["a","b"],"dist":[[0,-1],[-1,0]]})");
  CHECK_THROWS_AS(read_space(mpath), IoError);
}

TEST_CASE("trees round trip through the edge-list format") {
  auto t = random_tree(40, 3, 5);
  auto path = temp_path("hypfill_tree.txt");
  write_tree(path, t);
  auto back = read_tree(path);
  CHECK(back.parent == t.parent);
}

TEST_CASE("boundary functions and measures round trip") {
  auto fpath = temp_path("hypfill_fn.csv");
  BoundaryFunction f{{0.5, -1.25, 3.0}};
  write_boundary_function(fpath, f);
  auto back = read_boundary_function(fpath, 3);
  CHECK(back.value == f.value);

  auto mpath = temp_path("hypfill_measure.csv");
  write_text(mpath, "id,weight\n0,1\n1,0.5\n2,2\n");
  auto m = read_measure(mpath, 3);
  CHECK(m.weight == std::vector<double>{1.0, 0.5, 2.0});
  write_text(mpath, "id,weight\n0,1\n1,-0.5\n2,2\n");
  CHECK_THROWS_AS(read_measure(mpath, 3), IoError);
}

TEST_CASE("graph functions round trip against a filling") {
  auto z = cantor(3);
  auto g = make_filling(z, 2.0, 1.5);
  GraphFunction u;
  u.value.resize(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) u.value[i] = 0.25 * i;
  auto path = temp_path("hypfill_gfn.csv");
  write_graph_function(path, g, u);
  auto back = read_graph_function(path, g);
  CHECK(back.value == u.value);
}

TEST_CASE("exports are deterministic across rebuilds") {
  auto z = FiniteMetricSpace::from_matrix({0, 1, 1, 0}, 2, 0.5);
  auto g1 = make_filling(z, 2.0, 1.5);
  auto g2 = make_filling(z, 2.0, 1.5);
  CHECK(filling_to_json(g1) == filling_to_json(g2));
  CHECK(filling_to_graphml(g1) == filling_to_graphml(g2));
  CHECK(filling_to_dot(g1) == filling_to_dot(g2));

  auto u1 = UniformizedFilling::build(g1, std::log(2.0));
  auto u2 = UniformizedFilling::build(g2, std::log(2.0));
  CHECK(uniformized_to_json(u1) == uniformized_to_json(u2));
  CHECK(boundary_to_csv(boundary_metric(u1)) == boundary_to_csv(boundary_metric(u2)));
}

TEST_CASE("the JSON adjacency dump matches the in-memory graph") {
  auto z = FiniteMetricSpace::from_matrix({0, 1, 1, 0}, 2, 0.5);
  auto g = make_filling(z, 2.0, 1.5);
  auto j = nlohmann::ordered_json::parse(filling_to_json(g));
  CHECK(j["parameters"]["alpha"] == 2.0);
  CHECK(j["parameters"]["tau"] == 1.5);
  CHECK(j["parameters"]["stabilization_level"] == g.stabilization_level());
  REQUIRE(j["vertices"].size() == static_cast<std::size_t>(g.vertex_count()));
  REQUIRE(j["edges"].size() == g.edges().size());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    CHECK(j["edges"][i]["u"] == e.u);
    CHECK(j["edges"][i]["v"] == e.v);
    CHECK(j["edges"][i]["kind"] ==
          (e.kind == EdgeKind::Horizontal ? "horizontal" : "vertical"));
  }
  // GraphML carries one edge element per edge with its kind attribute.
  auto xml = filling_to_graphml(g);
  std::size_t count = 0, pos = 0;
  while ((pos = xml.find("<edge ", pos)) != std::string::npos) {
    ++count;
    pos += 5;
  }
  CHECK(count == g.edges().size());
  CHECK(xml.find(">horizontal<") != std::string::npos);

  auto mj = nlohmann::ordered_json::parse(
      measure_to_json(lift_measure(UniformizedFilling::build(g, std::log(2.0)),
                                   BoundaryMeasure{{0.5, 0.5}}, 1.0)));
  CHECK(mj["vertex_mass"].size() == static_cast<std::size_t>(g.vertex_count()));
  CHECK(mj["edge_density"].size() == g.edges().size());
  CHECK(mj["tail_mass"].size() == 2);
}
