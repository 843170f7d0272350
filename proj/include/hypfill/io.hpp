#ifndef HYPFILL_IO_HPP
#define HYPFILL_IO_HPP

#include <string>
#include <vector>

#include "hypfill/function_spaces.hpp"
#include "hypfill/generators.hpp"
#include "hypfill/measure.hpp"

namespace hypfill {

/// Point clouds: CSV `id,x1,...,xd` or JSON {"points":[{"id":..,"coords":[..]}]}.
/// Distance matrices: JSON {"labels":[...], "dist":[[...]]}. Format is
/// inferred from the content. All readers reject NaN and negative entries.
FiniteMetricSpace read_space(const std::string& path, double target_diam = 0.5);

std::string space_to_json(const FiniteMetricSpace& s);
void write_space(const std::string& path, const FiniteMetricSpace& s);

/// Tree files: root id on the first line, then `parent child` per line.
RootedTree read_tree(const std::string& path);
std::string tree_to_text(const RootedTree& t);
void write_tree(const std::string& path, const RootedTree& t);

/// Boundary functions: CSV `id,value`. Graph functions: `point,level,value`.
BoundaryFunction read_boundary_function(const std::string& path, int n_points);
void write_boundary_function(const std::string& path, const BoundaryFunction& f);
GraphFunction read_graph_function(const std::string& path, const FillingGraph& g);
void write_graph_function(const std::string& path, const FillingGraph& g,
                          const GraphFunction& u);

/// Per-point positive weights as CSV `id,weight`.
BoundaryMeasure read_measure(const std::string& path, int n_points);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace hypfill

#endif
