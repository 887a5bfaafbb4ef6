#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mgfield/graph.hpp"
#include "mgfield/markov.hpp"
#include "mgfield/report.hpp"
#include "mgfield/spd.hpp"

namespace mgfield {

/// Schema-level parse of graph JSON of the form
///   {"vertices": n, "edges": [{"id": 0, "from": u, "to": v, "length": l}, ...]}
/// Returns the raw vertex count and edge list without constructing a graph,
/// so callers can tell file-format errors apart from graph-validity errors.
/// Unknown keys, missing keys, and wrong types are rejected with BadParams.
std::pair<int, std::vector<Edge>> parse_graph_fields(const std::string& text);

/// parse_graph_fields followed by graph construction, which additionally
/// enforces edge ids, endpoint ranges, positive lengths, and connectivity.
MetricGraph parse_graph_json(const std::string& text);

std::string graph_to_json(const MetricGraph& g);

/// Parses points from JSON text: a list of {"vertex": v} or
/// {"edge": e, "t": offset} objects. Strict about keys and types.
/// Returned points are raw; canonicalize them against a graph.
std::vector<GraphPoint> parse_points_json(const std::string& text);

std::string points_to_json(const PointSet& pts);

/// Renders a labeled matrix as CSV: corner cell "label", then one label
/// column and one label row, entries printed as %.16e so values
/// round-trip exactly through parsing.
std::string matrix_to_csv(const LabeledMatrix& m);

/// Parses matrix CSV produced by matrix_to_csv. Labels must be in
/// canonical point order and match between row and column; the entry
/// block must be symmetric.
LabeledMatrix parse_matrix_csv(const std::string& text, MatrixKind kind);

/// Sample matrix as CSV: labeled rows, one unnamed column per draw.
std::string samples_to_csv(const PointSet& labels, const Eigen::MatrixXd& columns);

std::string report_to_json(const CheckReport& r);
std::string report_to_json(const FaithfulnessReport& r, const PointSet& labels);
std::string independence_graph_to_json(const IndependenceGraph& g);

}  // namespace mgfield
