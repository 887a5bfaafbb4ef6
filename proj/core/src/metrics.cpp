#include "mgfield/metrics.hpp"

#include <limits>
#include <queue>

#include <Eigen/Cholesky>

namespace mgfield {

namespace {

std::vector<double> dijkstra(const RefinedGraph& rg, int source) {
  const auto& adj = rg.adjacency();
  std::vector<double> dist(static_cast<size_t>(rg.node_count()),
                           std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[static_cast<size_t>(source)] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d > dist[static_cast<size_t>(x)]) continue;
    for (const auto& [y, eidx] : adj[static_cast<size_t>(x)]) {
      double nd = d + rg.edges()[static_cast<size_t>(eidx)].length;
      if (nd < dist[static_cast<size_t>(y)]) {
        dist[static_cast<size_t>(y)] = nd;
        heap.emplace(nd, y);
      }
    }
  }
  return dist;
}

std::vector<int> query_node_indices(const RefinedGraph& rg, const PointSet& points) {
  std::vector<int> idx;
  idx.reserve(static_cast<size_t>(points.size()));
  for (const GraphPoint& p : points) idx.push_back(rg.nodes().index_of(p));
  return idx;
}

}  // namespace

LabeledMatrix geodesic_matrix(const MetricGraph& g, const PointSet& points) {
  if (points.empty()) throw BadParams("distance matrix needs at least one point");
  RefinedGraph rg = refine(g, points);

  PointSet canon(g, std::vector<GraphPoint>(points.begin(), points.end()));
  std::vector<int> nodes = query_node_indices(rg, canon);
  int np = canon.size();
  Eigen::MatrixXd d(np, np);
  for (int i = 0; i < np; ++i) {
    std::vector<double> dist = dijkstra(rg, nodes[static_cast<size_t>(i)]);
    for (int j = 0; j < np; ++j) d(i, j) = dist[static_cast<size_t>(nodes[static_cast<size_t>(j)])];
    d(i, i) = 0.0;
  }
  return LabeledMatrix(canon, std::move(d), MatrixKind::distance);
}

LabeledMatrix resistance_matrix(const MetricGraph& g, const PointSet& points) {
  if (points.empty()) throw BadParams("distance matrix needs at least one point");
  RefinedGraph rg = refine(g, points);
  PointSet canon(g, std::vector<GraphPoint>(points.begin(), points.end()));
  std::vector<int> nodes = query_node_indices(rg, canon);
  int np = canon.size();
  int n = rg.node_count();

  if (n == 1) return LabeledMatrix(canon, Eigen::MatrixXd::Zero(np, np), MatrixKind::distance);

  // Weighted Laplacian with conductance 1/length per segment; self-loops
  // carry no current between distinct nodes and are skipped.
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const RefinedEdge& e : rg.edges()) {
    if (e.a == e.b) continue;
    double c = 1.0 / e.length;
    lap(e.a, e.a) += c;
    lap(e.b, e.b) += c;
    lap(e.a, e.b) -= c;
    lap(e.b, e.a) -= c;
  }

  // Ground node 0, solve the reduced system, then recentre the grounded
  // inverse into the Moore-Penrose pseudo-inverse.
  Eigen::LLT<Eigen::MatrixXd> llt(lap.bottomRightCorner(n - 1, n - 1));
  if (llt.info() != Eigen::Success)
    throw SingularLaplacian("reduced Laplacian is not positive definite");
  Eigen::MatrixXd grounded = Eigen::MatrixXd::Zero(n, n);
  grounded.bottomRightCorner(n - 1, n - 1) =
      llt.solve(Eigen::MatrixXd::Identity(n - 1, n - 1));

  Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::MatrixXd pinv = centering * grounded * centering;

  Eigen::MatrixXd d(np, np);
  for (int i = 0; i < np; ++i) {
    int a = nodes[static_cast<size_t>(i)];
    d(i, i) = 0.0;
    for (int j = i + 1; j < np; ++j) {
      int b = nodes[static_cast<size_t>(j)];
      double r = pinv(a, a) + pinv(b, b) - 2.0 * pinv(a, b);
      d(i, j) = r;
      d(j, i) = r;
    }
  }
  return LabeledMatrix(canon, std::move(d), MatrixKind::distance);
}

LabeledMatrix distance_matrix(const MetricGraph& g, const PointSet& points, Metric metric) {
  return metric == Metric::geodesic ? geodesic_matrix(g, points)
                                    : resistance_matrix(g, points);
}

}  // namespace mgfield
