#pragma once

#include "mgfield/graph.hpp"
#include "mgfield/spd.hpp"

namespace mgfield {

/// Which metric to put on the graph.
enum class Metric { geodesic, resistance };

/// Shortest-path distances between all pairs of `points`, computed on the
/// refinement of `g` at those points.
LabeledMatrix geodesic_matrix(const MetricGraph& g, const PointSet& points);

/// Effective resistance distances between all pairs of `points`, with each
/// edge segment acting as a resistor equal to its length. Computed from
/// the Moore-Penrose pseudo-inverse of the refined graph's Laplacian.
LabeledMatrix resistance_matrix(const MetricGraph& g, const PointSet& points);

/// Dispatch on `metric`.
LabeledMatrix distance_matrix(const MetricGraph& g, const PointSet& points, Metric metric);

}  // namespace mgfield
