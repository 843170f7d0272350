#include "hypfill/io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace hypfill {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, ',')) out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, bool allow_negative) {
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw IoError("bad numeric field: " + s);
  if (std::isnan(v)) throw IoError("NaN values are rejected");
  if (!allow_negative && v < 0.0) throw IoError("negative values are rejected");
  return v;
}

FiniteMetricSpace space_from_json(const ordered_json& j, double target_diam) {
  if (j.contains("points")) {
    std::vector<std::vector<double>> coords;
    std::vector<std::string> labels;
    for (const auto& pt : j.at("points")) {
      labels.push_back(pt.contains("id") ? pt.at("id").is_string()
                                               ? pt.at("id").get<std::string>()
                                               : std::to_string(pt.at("id").get<long long>())
                                         : std::to_string(labels.size()));
      std::vector<double> row;
      for (const auto& c : pt.at("coords")) {
        double v = c.get<double>();
        if (std::isnan(v)) throw IoError("NaN values are rejected");
        row.push_back(v);
      }
      coords.push_back(std::move(row));
    }
    return FiniteMetricSpace::from_points(coords, target_diam, std::move(labels));
  }
  if (j.contains("dist")) {
    std::vector<std::string> labels;
    if (j.contains("labels"))
      for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
    const auto& rows = j.at("dist");
    int n = static_cast<int>(rows.size());
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw IoError("distance matrix not square");
      for (const auto& e : row) {
        double v = e.get<double>();
        if (std::isnan(v) || v < 0.0)
          throw IoError("distances must be nonnegative numbers");
        d.push_back(v);
      }
    }
    return FiniteMetricSpace::from_matrix(std::move(d), n, target_diam,
                                          std::move(labels));
  }
  throw IoError("space JSON needs a points or dist field");
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

FiniteMetricSpace read_space(const std::string& path, double target_diam) {
  std::string text = read_text(path);
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw IoError("empty space file");
  if (text[first] == '{')
    return space_from_json(ordered_json::parse(text), target_diam);

  // CSV: header id,x1,...,xd then one row per point.
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty space file");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "id")
    throw IoError("point CSV header must be id,x1,...");
  std::vector<std::vector<double>> coords;
  std::vector<std::string> labels;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw IoError("ragged CSV row");
    labels.push_back(fields[0]);
    std::vector<double> row;
    for (std::size_t i = 1; i < fields.size(); ++i)
      row.push_back(parse_number(fields[i], true));
    coords.push_back(std::move(row));
  }
  return FiniteMetricSpace::from_points(coords, target_diam, std::move(labels));
}

std::string space_to_json(const FiniteMetricSpace& s) {
  ordered_json j;
  j["labels"] = s.labels();
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < s.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < s.size(); ++k) row.push_back(s.dist(i, k));
    rows.push_back(std::move(row));
  }
  j["dist"] = std::move(rows);
  j["diam"] = s.diam();
  j["scale_factor"] = s.scale_factor();
  return j.dump(2) + "\n";
}

void write_space(const std::string& path, const FiniteMetricSpace& s) {
  write_text(path, space_to_json(s));
}

RootedTree read_tree(const std::string& path) {
  std::istringstream is(read_text(path));
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty tree file");
  int root = std::stoi(line);
  std::vector<std::pair<int, int>> edges;
  int max_id = root;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int p, c;
    if (!(ls >> p >> c)) throw IoError("bad tree edge line: " + line);
    edges.push_back({p, c});
    max_id = std::max({max_id, p, c});
  }
  RootedTree t;
  t.parent.assign(max_id + 1, -2);
  t.parent[root] = -1;
  for (auto [p, c] : edges) {
    if (t.parent[c] != -2) throw IoError("tree vertex has two parents");
    t.parent[c] = p;
  }
  for (int v = 0; v <= max_id; ++v)
    if (t.parent[v] == -2) throw IoError("disconnected tree vertex " + std::to_string(v));
  if (root != 0) throw IoError("tree root must be vertex 0");
  return t;
}

std::string tree_to_text(const RootedTree& t) {
  std::ostringstream os;
  os << 0 << "\n";
  for (int v = 0; v < t.size(); ++v)
    if (t.parent[v] >= 0) os << t.parent[v] << " " << v << "\n";
  return os.str();
}

void write_tree(const std::string& path, const RootedTree& t) {
  write_text(path, tree_to_text(t));
}

BoundaryFunction read_boundary_function(const std::string& path, int n_points) {
  std::istringstream is(read_text(path));
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty function file");
  BoundaryFunction f;
  f.value.assign(n_points, 0.0);
  std::vector<char> seen(n_points, 0);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) throw IoError("boundary function rows are id,value");
    int id = std::stoi(fields[0]);
    if (id < 0 || id >= n_points) throw IoError("function id out of range");
    f.value[id] = parse_number(fields[1], true);
    seen[id] = 1;
  }
  for (int i = 0; i < n_points; ++i)
    if (!seen[i]) throw IoError("function misses point " + std::to_string(i));
  return f;
}

void write_boundary_function(const std::string& path, const BoundaryFunction& f) {
  std::ostringstream os;
  os << "id,value\n";
  for (std::size_t i = 0; i < f.value.size(); ++i) {
    ordered_json v = f.value[i];
    os << i << "," << v.dump() << "\n";
  }
  write_text(path, os.str());
}

GraphFunction read_graph_function(const std::string& path, const FillingGraph& g) {
  std::istringstream is(read_text(path));
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty function file");
  GraphFunction u;
  u.value.assign(g.vertex_count(), 0.0);
  std::vector<char> seen(g.vertex_count(), 0);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 3) throw IoError("graph function rows are point,level,value");
    int id = g.vertex_id(std::stoi(fields[0]), std::stoi(fields[1]));
    u.value[id] = std::stod(fields[2]);
    seen[id] = 1;
  }
  for (int i = 0; i < g.vertex_count(); ++i)
    if (!seen[i]) throw IoError("function misses a vertex");
  return u;
}

void write_graph_function(const std::string& path, const FillingGraph& g,
                          const GraphFunction& u) {
  std::ostringstream os;
  os << "point,level,value\n";
  for (int id = 0; id < g.vertex_count(); ++id) {
    const Vertex& v = g.vertex(id);
    ordered_json val = u.value[id];
    os << v.point << "," << v.level << "," << val.dump() << "\n";
  }
  write_text(path, os.str());
}

BoundaryMeasure read_measure(const std::string& path, int n_points) {
  std::istringstream is(read_text(path));
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty measure file");
  BoundaryMeasure m;
  m.weight.assign(n_points, 0.0);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) throw IoError("measure rows are id,weight");
    int id = std::stoi(fields[0]);
    if (id < 0 || id >= n_points) throw IoError("measure id out of range");
    m.weight[id] = parse_number(fields[1], false);
  }
  m.validate(n_points);
  return m;
}

}  // namespace hypfill
