#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mgfield/errors.hpp"
#include "mgfield/report.hpp"

namespace mgfield {

/// One edge of a metric graph: endpoints `u`, `v` (may coincide for a loop)
/// and a positive length. `id` equals the edge's position in the edge list.
struct Edge {
  int id;
  int u;
  int v;
  double length;
};

/// A connected metric graph: vertices 0..n-1 and edges carrying positive
/// lengths. Parallel edges and self-loops are allowed.
class MetricGraph {
public:
  /// Validates endpoint indices, edge ids (which must equal positions),
  /// positive lengths, and connectivity.
  MetricGraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Edge by id; throws BadIndex when out of range.
  const Edge& edge(int id) const;

  double total_length() const noexcept;
  bool has_loops() const noexcept;

  /// True when all edge lengths agree to within `rel_tol` of their common
  /// value, which is then stored in `*ell` when non-null.
  bool uniform_edge_length(double* ell = nullptr, double rel_tol = 1e-12) const noexcept;

  /// Multigraph vertex degrees; a loop contributes 2 to its vertex.
  std::vector<int> vertex_degrees() const;

private:
  int vertex_count_;
  std::vector<Edge> edges_;
};

/// A location on a metric graph: either a vertex or an interior point of an
/// edge at a given arc-length offset from the edge's `u` endpoint.
class GraphPoint {
public:
  static GraphPoint at_vertex(int v);
  static GraphPoint on_edge(int edge, double offset);

  bool is_vertex() const noexcept { return vertex_ >= 0; }
  int vertex() const noexcept { return vertex_; }
  int edge() const noexcept { return edge_; }
  double offset() const noexcept { return offset_; }

  /// Display label: a vertex is its index, an interior point is
  /// "e<edge>:<offset>" with the offset printed to full precision.
  std::string label() const;

  friend bool operator==(const GraphPoint& a, const GraphPoint& b) noexcept {
    return a.vertex_ == b.vertex_ && a.edge_ == b.edge_ && a.offset_ == b.offset_;
  }

  /// Canonical order: all vertices by index, then interior points by
  /// (edge, offset).
  friend bool operator<(const GraphPoint& a, const GraphPoint& b) noexcept;

private:
  GraphPoint(int v, int e, double off) : vertex_(v), edge_(e), offset_(off) {}

  int vertex_ = -1;
  int edge_ = -1;
  double offset_ = 0.0;
};

/// Maps a point to canonical form on `g`: offsets 0 and full length become
/// the corresponding endpoint vertex. Throws BadIndex or BadPoint.
GraphPoint canonical_point(const MetricGraph& g, const GraphPoint& p);

/// An ordered duplicate-free set of canonical points, sorted in the
/// canonical point order. Matrix rows and columns are labeled by these.
class PointSet {
public:
  PointSet() = default;

  /// Canonicalizes each point against `g`, removes duplicates, sorts.
  PointSet(const MetricGraph& g, std::vector<GraphPoint> raw);

  /// Accepts a sequence that is already canonical, strictly sorted, and
  /// duplicate free; throws BadParams otherwise.
  static PointSet from_sorted(std::vector<GraphPoint> pts);

  /// All vertices of `g`.
  static PointSet vertices(const MetricGraph& g);

  /// Set union with another point set over the same graph.
  PointSet united(const PointSet& other) const;

  int size() const noexcept { return static_cast<int>(points_.size()); }
  bool empty() const noexcept { return points_.empty(); }
  const GraphPoint& operator[](int i) const { return points_[static_cast<size_t>(i)]; }
  const std::vector<GraphPoint>& points() const noexcept { return points_; }

  /// Position of a canonical point, or -1 when absent.
  int index_of(const GraphPoint& p) const noexcept;

  std::vector<std::string> labels() const;

  friend bool operator==(const PointSet& a, const PointSet& b) noexcept {
    return a.points_ == b.points_;
  }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

private:
  std::vector<GraphPoint> points_;
};

/// One edge of a refined graph: node indices `a`, `b` into the refined node
/// set, the segment length, and the parent edge it came from.
struct RefinedEdge {
  int a;
  int b;
  double length;
  int parent_edge;
};

/// The graph obtained from a metric graph by turning a point set into
/// vertices. Nodes are the original vertices plus the interior points,
/// indexed by their position in `nodes()`.
class RefinedGraph {
public:
  RefinedGraph(PointSet nodes, std::vector<RefinedEdge> edges);

  const PointSet& nodes() const noexcept { return nodes_; }
  int node_count() const noexcept { return nodes_.size(); }
  const std::vector<RefinedEdge>& edges() const noexcept { return edges_; }

  /// Adjacency lists: for each node, pairs (neighbor, refined edge index).
  /// A loop at node `a` appears twice in `a`'s list.
  const std::vector<std::vector<std::pair<int, int>>>& adjacency() const noexcept {
    return adjacency_;
  }

  /// Distinct unordered adjacent pairs (a < b), sorted; loops excluded.
  const std::vector<std::pair<int, int>>& adjacent_pairs() const noexcept {
    return adjacent_pairs_;
  }

  bool adjacent(int a, int b) const noexcept;

private:
  PointSet nodes_;
  std::vector<RefinedEdge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  std::vector<std::pair<int, int>> adjacent_pairs_;
};

/// Turns `points` into vertices: each edge is split at the offsets of the
/// points lying on it. The refined node set is always `points` united with
/// all vertices of `g`.
RefinedGraph refine(const MetricGraph& g, const PointSet& points);

/// Checks that a refined graph has no parallel edges and no self-loops.
/// The returned report lists every violating vertex pair or loop vertex.
CheckReport is_admissible(const RefinedGraph& rg);

/// Smallest superset of `points` whose refinement passes is_admissible,
/// built by adding interior points on offending edges. Idempotent.
PointSet make_admissible(const MetricGraph& g, const PointSet& points);

/// True when every path between nodes `t` and `s` of the refined graph
/// meets `separator`. Throws BadIndex on bad node indices or when `t` or
/// `s` lies in the separator, BadParams when t == s.
bool separates(const RefinedGraph& rg, const std::vector<int>& separator, int t, int s);

/// Straight-line graph with `n` vertices and `n - 1` edges of equal length.
MetricGraph generate_path(int n, double edge_length);

/// Cycle with `n` vertices (n >= 3) and equal edge lengths.
MetricGraph generate_cycle(int n, double edge_length);

/// Random tree on `n` vertices: vertex i attaches to a uniformly chosen
/// earlier vertex with length uniform in [min_length, max_length].
/// Deterministic for a fixed seed.
MetricGraph generate_tree(int n, std::uint64_t seed, double min_length, double max_length);

/// Two unit-length 4-cycles glued at one shared vertex: 7 vertices and
/// 8 edges. Vertex 3 is the shared vertex.
MetricGraph generate_tadpole();

/// rows x cols grid with equal edge lengths.
MetricGraph generate_lattice(int rows, int cols, double edge_length);

/// Glues `g2` onto `g1` by identifying vertex `v2` of `g2` with vertex
/// `v1` of `g1`. The result has the vertices of `g1` followed by the
/// remaining vertices of `g2`, and the edges of `g1` followed by those
/// of `g2`.
MetricGraph one_sum(const MetricGraph& g1, const MetricGraph& g2, int v1, int v2);

}  // namespace mgfield
