#include "mgfield/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

namespace mgfield {

namespace {

std::string fmt_offset(double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", t);
  return buf;
}

}  // namespace

MetricGraph::MetricGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1)
    throw BadParams("graph must have at least one vertex");
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.id != static_cast<int>(i))
      throw BadParams("edge id " + std::to_string(e.id) + " does not equal its position " +
                      std::to_string(i));
    if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_)
      throw BadIndex("edge " + std::to_string(e.id) + " has an endpoint out of range");
    if (!(e.length > 0.0))
      throw NonPositiveLength("edge " + std::to_string(e.id) + " has non-positive length");
  }

  std::vector<char> seen(static_cast<size_t>(vertex_count_), 0);
  std::vector<std::vector<int>> adj(static_cast<size_t>(vertex_count_));
  for (const Edge& e : edges_) {
    adj[static_cast<size_t>(e.u)].push_back(e.v);
    adj[static_cast<size_t>(e.v)].push_back(e.u);
  }
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[static_cast<size_t>(x)])
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = 1;
        stack.push_back(y);
      }
  }
  for (int v = 0; v < vertex_count_; ++v)
    if (!seen[static_cast<size_t>(v)])
      throw Disconnected("vertex " + std::to_string(v) + " is not reachable from vertex 0");
}

const Edge& MetricGraph::edge(int id) const {
  if (id < 0 || id >= edge_count())
    throw BadIndex("edge index " + std::to_string(id) + " out of range");
  return edges_[static_cast<size_t>(id)];
}

double MetricGraph::total_length() const noexcept {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.length;
  return s;
}

bool MetricGraph::has_loops() const noexcept {
  for (const Edge& e : edges_)
    if (e.u == e.v) return true;
  return false;
}

bool MetricGraph::uniform_edge_length(double* ell, double rel_tol) const noexcept {
  if (edges_.empty()) return false;
  double l0 = edges_[0].length;
  for (const Edge& e : edges_)
    if (std::abs(e.length - l0) > rel_tol * l0) return false;
  if (ell) *ell = l0;
  return true;
}

std::vector<int> MetricGraph::vertex_degrees() const {
  std::vector<int> deg(static_cast<size_t>(vertex_count_), 0);
  for (const Edge& e : edges_) {
    deg[static_cast<size_t>(e.u)] += 1;
    deg[static_cast<size_t>(e.v)] += 1;
  }
  return deg;
}

GraphPoint GraphPoint::at_vertex(int v) {
  if (v < 0) throw BadIndex("vertex index must be non-negative");
  return GraphPoint(v, -1, 0.0);
}

GraphPoint GraphPoint::on_edge(int edge, double offset) {
  if (edge < 0) throw BadIndex("edge index must be non-negative");
  if (!std::isfinite(offset)) throw BadPoint("point offset must be finite");
  return GraphPoint(-1, edge, offset);
}

std::string GraphPoint::label() const {
  if (is_vertex()) return std::to_string(vertex_);
  return "e" + std::to_string(edge_) + ":" + fmt_offset(offset_);
}

bool operator<(const GraphPoint& a, const GraphPoint& b) noexcept {
  if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
  if (a.is_vertex()) return a.vertex_ < b.vertex_;
  if (a.edge_ != b.edge_) return a.edge_ < b.edge_;
  return a.offset_ < b.offset_;
}

GraphPoint canonical_point(const MetricGraph& g, const GraphPoint& p) {
  if (p.is_vertex()) {
    if (p.vertex() >= g.vertex_count())
      throw BadIndex("point refers to vertex " + std::to_string(p.vertex()) +
                     " of a graph with " + std::to_string(g.vertex_count()) + " vertices");
    return p;
  }
  const Edge& e = g.edge(p.edge());
  double t = p.offset();
  if (!(t >= 0.0) || !(t <= e.length))
    throw BadPoint("offset " + fmt_offset(t) + " outside edge " + std::to_string(e.id) +
                   " of length " + fmt_offset(e.length));
  if (t == 0.0) return GraphPoint::at_vertex(e.u);
  if (t == e.length) return GraphPoint::at_vertex(e.v);
  return p;
}

PointSet::PointSet(const MetricGraph& g, std::vector<GraphPoint> raw) {
  points_.reserve(raw.size());
  for (const GraphPoint& p : raw) points_.push_back(canonical_point(g, p));
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

PointSet PointSet::from_sorted(std::vector<GraphPoint> pts) {
  for (size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i - 1] < pts[i]))
      throw BadParams("points are not in strictly increasing canonical order");
  PointSet s;
  s.points_ = std::move(pts);
  return s;
}

PointSet PointSet::vertices(const MetricGraph& g) {
  std::vector<GraphPoint> pts;
  pts.reserve(static_cast<size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) pts.push_back(GraphPoint::at_vertex(v));
  PointSet s;
  s.points_ = std::move(pts);
  return s;
}

PointSet PointSet::united(const PointSet& other) const {
  std::vector<GraphPoint> merged;
  merged.reserve(points_.size() + other.points_.size());
  std::merge(points_.begin(), points_.end(), other.points_.begin(), other.points_.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  PointSet s;
  s.points_ = std::move(merged);
  return s;
}

int PointSet::index_of(const GraphPoint& p) const noexcept {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || !(*it == p)) return -1;
  return static_cast<int>(it - points_.begin());
}

std::vector<std::string> PointSet::labels() const {
  std::vector<std::string> out;
  out.reserve(points_.size());
  for (const GraphPoint& p : points_) out.push_back(p.label());
  return out;
}

RefinedGraph::RefinedGraph(PointSet nodes, std::vector<RefinedEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  adjacency_.resize(static_cast<size_t>(nodes_.size()));
  for (size_t k = 0; k < edges_.size(); ++k) {
    const RefinedEdge& e = edges_[k];
    adjacency_[static_cast<size_t>(e.a)].emplace_back(e.b, static_cast<int>(k));
    adjacency_[static_cast<size_t>(e.b)].emplace_back(e.a, static_cast<int>(k));
    if (e.a != e.b) {
      int lo = std::min(e.a, e.b), hi = std::max(e.a, e.b);
      adjacent_pairs_.emplace_back(lo, hi);
    }
  }
  std::sort(adjacent_pairs_.begin(), adjacent_pairs_.end());
  adjacent_pairs_.erase(std::unique(adjacent_pairs_.begin(), adjacent_pairs_.end()),
                        adjacent_pairs_.end());
}

bool RefinedGraph::adjacent(int a, int b) const noexcept {
  if (a == b) return false;
  std::pair<int, int> key{std::min(a, b), std::max(a, b)};
  return std::binary_search(adjacent_pairs_.begin(), adjacent_pairs_.end(), key);
}

RefinedGraph refine(const MetricGraph& g, const PointSet& points) {
  PointSet canon(g, std::vector<GraphPoint>(points.begin(), points.end()));
  PointSet nodes = canon.united(PointSet::vertices(g));

  // Interior points per edge, already sorted by offset within each edge
  // because of the canonical point order.
  std::vector<std::vector<int>> on_edge(static_cast<size_t>(g.edge_count()));
  for (int i = 0; i < nodes.size(); ++i) {
    const GraphPoint& p = nodes[i];
    if (!p.is_vertex()) on_edge[static_cast<size_t>(p.edge())].push_back(i);
  }

  std::vector<RefinedEdge> redges;
  for (const Edge& e : g.edges()) {
    int u_node = nodes.index_of(GraphPoint::at_vertex(e.u));
    int v_node = nodes.index_of(GraphPoint::at_vertex(e.v));
    const std::vector<int>& mids = on_edge[static_cast<size_t>(e.id)];
    int prev = u_node;
    double prev_off = 0.0;
    for (int node : mids) {
      double off = nodes[node].offset();
      redges.push_back({prev, node, off - prev_off, e.id});
      prev = node;
      prev_off = off;
    }
    redges.push_back({prev, v_node, e.length - prev_off, e.id});
  }
  return RefinedGraph(std::move(nodes), std::move(redges));
}

CheckReport is_admissible(const RefinedGraph& rg) {
  CheckReport rep;
  rep.check = "admissible";

  std::vector<int> loops;
  std::map<std::pair<int, int>, int> pair_count;
  for (const RefinedEdge& e : rg.edges()) {
    if (e.a == e.b) {
      loops.push_back(e.a);
    } else {
      std::pair<int, int> key{std::min(e.a, e.b), std::max(e.a, e.b)};
      pair_count[key] += 1;
    }
  }
  std::sort(loops.begin(), loops.end());
  for (int v : loops)
    rep.violations.push_back({"self_loop", {v}, 0.0, ""});
  for (const auto& [key, count] : pair_count)
    if (count > 1)
      rep.violations.push_back({"parallel_edges", {key.first, key.second},
                                static_cast<double>(count), ""});
  rep.pass = rep.violations.empty();
  return rep;
}

PointSet make_admissible(const MetricGraph& g, const PointSet& raw_points) {
  PointSet points(g, std::vector<GraphPoint>(raw_points.begin(), raw_points.end()));
  std::vector<int> interior_count(static_cast<size_t>(g.edge_count()), 0);
  std::vector<double> lone_offset(static_cast<size_t>(g.edge_count()), -1.0);
  for (const GraphPoint& p : points)
    if (!p.is_vertex()) {
      interior_count[static_cast<size_t>(p.edge())] += 1;
      lone_offset[static_cast<size_t>(p.edge())] = p.offset();
    }

  std::vector<GraphPoint> added;

  // A loop survives refinement unless it carries at least two interior
  // points: zero points leave the loop itself, one point leaves a
  // parallel pair.
  for (const Edge& e : g.edges()) {
    if (e.u != e.v) continue;
    int k = interior_count[static_cast<size_t>(e.id)];
    if (k == 0) {
      added.push_back(GraphPoint::on_edge(e.id, e.length / 3.0));
      added.push_back(GraphPoint::on_edge(e.id, 2.0 * e.length / 3.0));
    } else if (k == 1) {
      double t = lone_offset[static_cast<size_t>(e.id)];
      double mid = t >= e.length / 2.0 ? t / 2.0 : (t + e.length) / 2.0;
      added.push_back(GraphPoint::on_edge(e.id, mid));
    }
  }

  // Parallel refined edges between distinct vertices come only from
  // parent edges with no interior points; split all but the first of
  // each group at the midpoint.
  std::map<std::pair<int, int>, std::vector<int>> bare;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v || interior_count[static_cast<size_t>(e.id)] > 0) continue;
    bare[{std::min(e.u, e.v), std::max(e.u, e.v)}].push_back(e.id);
  }
  for (const auto& [key, ids] : bare)
    for (size_t k = 1; k < ids.size(); ++k) {
      const Edge& e = g.edge(ids[k]);
      added.push_back(GraphPoint::on_edge(e.id, e.length / 2.0));
    }

  if (added.empty()) return points;
  std::vector<GraphPoint> all(points.begin(), points.end());
  all.insert(all.end(), added.begin(), added.end());
  return PointSet(g, std::move(all));
}

bool separates(const RefinedGraph& rg, const std::vector<int>& separator, int t, int s) {
  int n = rg.node_count();
  auto check_range = [n](int x, const char* what) {
    if (x < 0 || x >= n)
      throw BadIndex(std::string(what) + " index " + std::to_string(x) + " out of range");
  };
  check_range(t, "node");
  check_range(s, "node");
  if (t == s) throw BadParams("separation requires two distinct nodes");
  std::vector<char> blocked(static_cast<size_t>(n), 0);
  for (int v : separator) {
    check_range(v, "separator");
    blocked[static_cast<size_t>(v)] = 1;
  }
  if (blocked[static_cast<size_t>(t)] || blocked[static_cast<size_t>(s)])
    throw BadParams("separator must not contain the nodes being separated");

  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> stack{t};
  seen[static_cast<size_t>(t)] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (x == s) return false;
    for (const auto& [y, eidx] : rg.adjacency()[static_cast<size_t>(x)])
      if (!seen[static_cast<size_t>(y)] && !blocked[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = 1;
        stack.push_back(y);
      }
  }
  return true;
}

MetricGraph generate_path(int n, double edge_length) {
  if (n < 2) throw BadParams("a path needs at least two vertices");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i, i + 1, edge_length});
  return MetricGraph(n, std::move(edges));
}

MetricGraph generate_cycle(int n, double edge_length) {
  if (n < 3) throw BadParams("a cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, i, (i + 1) % n, edge_length});
  return MetricGraph(n, std::move(edges));
}

MetricGraph generate_tree(int n, std::uint64_t seed, double min_length, double max_length) {
  if (n < 2) throw BadParams("a tree needs at least two vertices");
  if (!(min_length > 0.0)) throw NonPositiveLength("minimum edge length must be positive");
  if (max_length < min_length) throw BadParams("maximum edge length below minimum");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    int parent = static_cast<int>(rng() % static_cast<std::uint64_t>(i));
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double len = min_length + (max_length - min_length) * u;
    edges.push_back({i - 1, parent, i, len});
  }
  return MetricGraph(n, std::move(edges));
}

MetricGraph generate_tadpole() {
  std::vector<Edge> edges{
      {0, 0, 1, 1.0}, {1, 1, 2, 1.0}, {2, 2, 3, 1.0}, {3, 3, 0, 1.0},
      {4, 3, 4, 1.0}, {5, 4, 5, 1.0}, {6, 5, 6, 1.0}, {7, 6, 3, 1.0},
  };
  return MetricGraph(7, std::move(edges));
}

MetricGraph generate_lattice(int rows, int cols, double edge_length) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw BadParams("a lattice needs at least two vertices");
  std::vector<Edge> edges;
  int id = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) edges.push_back({id++, v, v + 1, edge_length});
      if (r + 1 < rows) edges.push_back({id++, v, v + cols, edge_length});
    }
  return MetricGraph(rows * cols, std::move(edges));
}

MetricGraph one_sum(const MetricGraph& g1, const MetricGraph& g2, int v1, int v2) {
  if (v1 < 0 || v1 >= g1.vertex_count())
    throw BadIndex("glue vertex " + std::to_string(v1) + " out of range in first graph");
  if (v2 < 0 || v2 >= g2.vertex_count())
    throw BadIndex("glue vertex " + std::to_string(v2) + " out of range in second graph");

  int n1 = g1.vertex_count();
  auto remap = [&](int w) {
    if (w == v2) return v1;
    return w < v2 ? n1 + w : n1 + w - 1;
  };

  std::vector<Edge> edges = g1.edges();
  for (const Edge& e : g2.edges())
    edges.push_back({g1.edge_count() + e.id, remap(e.u), remap(e.v), e.length});
  return MetricGraph(n1 + g2.vertex_count() - 1, std::move(edges));
}

}  // namespace mgfield
