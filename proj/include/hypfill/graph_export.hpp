#ifndef HYPFILL_GRAPH_EXPORT_HPP
#define HYPFILL_GRAPH_EXPORT_HPP

#include <string>

#include "hypfill/measure.hpp"
#include "hypfill/uniformize.hpp"

namespace hypfill {

/// Deterministic exports: vertices ordered by (level, point index), edges
/// by endpoint ids, doubles in shortest round-trip form. Running the same
/// export twice yields byte-identical output.
std::string filling_to_graphml(const FillingGraph& g);
std::string filling_to_dot(const FillingGraph& g);
std::string filling_to_json(const FillingGraph& g);

/// Weighted variants carrying edge_len plus boundary nodes and tail weights.
std::string uniformized_to_graphml(const UniformizedFilling& u);
std::string uniformized_to_dot(const UniformizedFilling& u);
std::string uniformized_to_json(const UniformizedFilling& u);

/// Labeled all-pairs boundary distances.
std::string boundary_to_csv(const BoundarySpace& b);

/// Per-vertex masses, per-edge densities, per-ray tails, total.
std::string measure_to_json(const LiftedMeasure& m);

}  // namespace hypfill

#endif
