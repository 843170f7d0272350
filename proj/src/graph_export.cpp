#include "hypfill/graph_export.hpp"

#include <json.hpp>
#include <sstream>

namespace hypfill {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string vertex_name(const FillingGraph& g, int id) {
  const Vertex& v = g.vertex(id);
  return "v" + std::to_string(v.point) + "_" + std::to_string(v.level);
}

const char* kind_name(EdgeKind k) {
  return k == EdgeKind::Horizontal ? "horizontal" : "vertical";
}

ordered_json parameter_block(const FillingGraph& g) {
  ordered_json p;
  p["alpha"] = g.alpha();
  p["tau"] = g.tau();
  p["counterexample_mode"] = g.counterexample_mode();
  p["ball_overlap_level"] = g.ball_overlap_level();
  p["stabilization_level"] = g.stabilization_level();
  p["truncation_level"] = g.truncation_level();
  p["net_order"] = "greedy-by-point-index";
  return p;
}

}  // namespace

std::string filling_to_graphml(const FillingGraph& g) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
     << "  <key id=\"level\" for=\"node\" attr.name=\"level\" attr.type=\"int\"/>\n"
     << "  <key id=\"kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
     << "  <graph id=\"filling\" edgedefault=\"undirected\">\n";
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    os << "    <node id=\"" << vertex_name(g, id) << "\">"
       << "<data key=\"label\">" << g.space().label(v.point) << "</data>"
       << "<data key=\"level\">" << v.level << "</data></node>\n";
  }
  for (const Edge& e : g.edges())
    os << "    <edge source=\"" << vertex_name(g, e.u) << "\" target=\""
       << vertex_name(g, e.v) << "\"><data key=\"kind\">" << kind_name(e.kind)
       << "</data></edge>\n";
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

std::string filling_to_dot(const FillingGraph& g) {
  std::ostringstream os;
  os << "graph filling {\n";
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    os << "  " << vertex_name(g, id) << " [label=\"" << g.space().label(v.point)
       << "@" << v.level << "\", level=" << v.level << "];\n";
  }
  for (const Edge& e : g.edges())
    os << "  " << vertex_name(g, e.u) << " -- " << vertex_name(g, e.v)
       << " [kind=" << kind_name(e.kind) << "];\n";
  os << "}\n";
  return os.str();
}

std::string filling_to_json(const FillingGraph& g) {
  ordered_json j;
  j["parameters"] = parameter_block(g);
  ordered_json verts = ordered_json::array();
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    verts.push_back({{"id", id},
                     {"point", v.point},
                     {"label", g.space().label(v.point)},
                     {"level", v.level}});
  }
  j["vertices"] = std::move(verts);
  ordered_json edges = ordered_json::array();
  for (const Edge& e : g.edges())
    edges.push_back({{"u", e.u}, {"v", e.v}, {"kind", kind_name(e.kind)}});
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

std::string uniformized_to_graphml(const UniformizedFilling& u) {
  const FillingGraph& g = u.graph();
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
     << "  <key id=\"level\" for=\"node\" attr.name=\"level\" attr.type=\"int\"/>\n"
     << "  <key id=\"boundary\" for=\"node\" attr.name=\"boundary\" attr.type=\"boolean\"/>\n"
     << "  <key id=\"kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
     << "  <key id=\"len\" for=\"edge\" attr.name=\"edge_len\" attr.type=\"double\"/>\n"
     << "  <graph id=\"uniformized\" edgedefault=\"undirected\">\n";
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    os << "    <node id=\"" << vertex_name(g, id) << "\">"
       << "<data key=\"label\">" << g.space().label(v.point) << "</data>"
       << "<data key=\"level\">" << v.level << "</data>"
       << "<data key=\"boundary\">false</data></node>\n";
  }
  for (int p = 0; p < g.space().size(); ++p)
    os << "    <node id=\"b" << p << "\"><data key=\"label\">"
       << g.space().label(p) << "</data><data key=\"boundary\">true</data></node>\n";
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    ordered_json len = u.edge_length(static_cast<int>(i));
    os << "    <edge source=\"" << vertex_name(g, edges[i].u) << "\" target=\""
       << vertex_name(g, edges[i].v) << "\"><data key=\"kind\">"
       << kind_name(edges[i].kind) << "</data><data key=\"len\">" << len.dump()
       << "</data></edge>\n";
  }
  for (int p = 0; p < g.space().size(); ++p) {
    ordered_json w = u.tail_weight();
    os << "    <edge source=\""
       << vertex_name(g, g.vertex_id(p, g.truncation_level())) << "\" target=\"b"
       << p << "\"><data key=\"kind\">tail</data><data key=\"len\">" << w.dump()
       << "</data></edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

std::string uniformized_to_dot(const UniformizedFilling& u) {
  const FillingGraph& g = u.graph();
  std::ostringstream os;
  os << "graph uniformized {\n";
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    os << "  " << vertex_name(g, id) << " [label=\"" << g.space().label(v.point)
       << "@" << v.level << "\"];\n";
  }
  for (int p = 0; p < g.space().size(); ++p)
    os << "  b" << p << " [label=\"bdry:" << g.space().label(p)
       << "\", shape=box];\n";
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    ordered_json len = u.edge_length(static_cast<int>(i));
    os << "  " << vertex_name(g, edges[i].u) << " -- " << vertex_name(g, edges[i].v)
       << " [kind=" << kind_name(edges[i].kind) << ", len=" << len.dump() << "];\n";
  }
  for (int p = 0; p < g.space().size(); ++p) {
    ordered_json w = u.tail_weight();
    os << "  " << vertex_name(g, g.vertex_id(p, g.truncation_level())) << " -- b"
       << p << " [kind=tail, len=" << w.dump() << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string uniformized_to_json(const UniformizedFilling& u) {
  const FillingGraph& g = u.graph();
  ordered_json j = nlohmann::ordered_json::parse(filling_to_json(g));
  j["parameters"]["eps"] = u.eps();
  j["parameters"]["sigma"] = u.sigma();
  j["parameters"]["collapse_mode"] = u.collapse_mode();
  j["parameters"]["tail_weight"] = u.tail_weight();
  ordered_json lens = ordered_json::array();
  for (double l : u.edge_lengths()) lens.push_back(l);
  j["edge_len"] = std::move(lens);
  ordered_json bnodes = ordered_json::array();
  for (int p = 0; p < g.space().size(); ++p)
    bnodes.push_back({{"point", p},
                      {"label", g.space().label(p)},
                      {"attached", "level " + std::to_string(g.truncation_level())}});
  j["boundary_nodes"] = std::move(bnodes);
  return j.dump(2) + "\n";
}

std::string boundary_to_csv(const BoundarySpace& b) {
  std::ostringstream os;
  os << "label";
  for (int i = 0; i < b.n; ++i) os << "," << b.labels[i];
  os << "\n";
  for (int i = 0; i < b.n; ++i) {
    os << b.labels[i];
    for (int j = 0; j < b.n; ++j) {
      ordered_json v = b.d(i, j);
      os << "," << v.dump();
    }
    os << "\n";
  }
  return os.str();
}

std::string measure_to_json(const LiftedMeasure& m) {
  const FillingGraph& g = m.unif().graph();
  ordered_json j;
  j["beta"] = m.beta();
  j["total_mass"] = m.total_mass();
  ordered_json verts = ordered_json::array();
  for (int id = 0; id < g.vertex_count(); ++id)
    verts.push_back(m.vertex_mass(id));
  j["vertex_mass"] = std::move(verts);
  ordered_json dens = ordered_json::array();
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    dens.push_back(m.edge_density(static_cast<int>(i)));
  j["edge_density"] = std::move(dens);
  ordered_json tails = ordered_json::array();
  for (int p = 0; p < g.space().size(); ++p) tails.push_back(m.tail_mass(p));
  j["tail_mass"] = std::move(tails);
  return j.dump(2) + "\n";
}

}  // namespace hypfill
