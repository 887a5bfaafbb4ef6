#pragma once

// Independent reference implementations used to cross-check library
// results. These deliberately take different algorithmic routes than the
// library: exhaustive path enumeration instead of Dijkstra, a full
// orthogonal-decomposition pseudo-inverse instead of grounding, and
// restrict-then-invert instead of Schur complements.

#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mgfield/graph.hpp"
#include "mgfield/metrics.hpp"

namespace oracle {

inline void extend_path(const mgfield::RefinedGraph& rg, int cur, int target,
                        std::vector<char>& used, double len, double& best) {
  if (cur == target) {
    best = std::min(best, len);
    return;
  }
  if (len >= best) return;
  for (const auto& [y, eidx] : rg.adjacency()[static_cast<size_t>(cur)]) {
    if (used[static_cast<size_t>(y)]) continue;
    used[static_cast<size_t>(y)] = 1;
    extend_path(rg, y, target, used, len + rg.edges()[static_cast<size_t>(eidx)].length, best);
    used[static_cast<size_t>(y)] = 0;
  }
}

// Shortest path by enumerating every simple path between two refined nodes.
inline double geodesic_by_enumeration(const mgfield::RefinedGraph& rg, int a, int b) {
  if (a == b) return 0.0;
  std::vector<char> used(static_cast<size_t>(rg.node_count()), 0);
  used[static_cast<size_t>(a)] = 1;
  double best = std::numeric_limits<double>::infinity();
  extend_path(rg, a, b, used, 0.0, best);
  return best;
}

// Effective resistances from the full Moore-Penrose pseudo-inverse of the
// Laplacian, computed by complete orthogonal decomposition.
inline Eigen::MatrixXd resistance_by_pseudoinverse(const mgfield::MetricGraph& g,
                                                   const mgfield::PointSet& points) {
  mgfield::RefinedGraph rg = mgfield::refine(g, points);
  int n = rg.node_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const mgfield::RefinedEdge& e : rg.edges()) {
    if (e.a == e.b) continue;
    double c = 1.0 / e.length;
    lap(e.a, e.a) += c;
    lap(e.b, e.b) += c;
    lap(e.a, e.b) -= c;
    lap(e.b, e.a) -= c;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lap);
  Eigen::MatrixXd pinv = cod.pseudoInverse();

  int np = points.size();
  Eigen::MatrixXd d(np, np);
  for (int i = 0; i < np; ++i) {
    int a = rg.nodes().index_of(points[i]);
    for (int j = 0; j < np; ++j) {
      int b = rg.nodes().index_of(points[j]);
      d(i, j) = pinv(a, a) + pinv(b, b) - 2.0 * pinv(a, b);
    }
    d(i, i) = 0.0;
  }
  return d;
}

// Partial correlation by restricting the covariance to {i, j} and the
// conditioning set, inverting, and reading off the precision entries.
inline double partial_correlation_by_inversion(const Eigen::MatrixXd& cov, int i, int j,
                                               const std::vector<int>& given) {
  std::vector<int> idx{i, j};
  idx.insert(idx.end(), given.begin(), given.end());
  Eigen::Index m = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd block(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      block(a, b) = cov(idx[static_cast<size_t>(a)], idx[static_cast<size_t>(b)]);
  Eigen::MatrixXd prec = block.inverse();
  return -prec(0, 1) / std::sqrt(prec(0, 0) * prec(1, 1));
}

// Separation by enumerating simple paths and checking each one meets the
// separator.
inline bool path_meets_separator(const mgfield::RefinedGraph& rg, int cur, int target,
                                 std::vector<char>& used, const std::vector<char>& sep) {
  if (cur == target) return false;
  for (const auto& [y, eidx] : rg.adjacency()[static_cast<size_t>(cur)]) {
    if (used[static_cast<size_t>(y)] || sep[static_cast<size_t>(y)]) continue;
    used[static_cast<size_t>(y)] = 1;
    if (!path_meets_separator(rg, y, target, used, sep)) return false;
    used[static_cast<size_t>(y)] = 0;
  }
  return true;
}

inline bool separates_by_enumeration(const mgfield::RefinedGraph& rg,
                                     const std::vector<int>& separator, int t, int s) {
  std::vector<char> sep(static_cast<size_t>(rg.node_count()), 0);
  for (int v : separator) sep[static_cast<size_t>(v)] = 1;
  std::vector<char> used(static_cast<size_t>(rg.node_count()), 0);
  used[static_cast<size_t>(t)] = 1;
  return path_meets_separator(rg, t, s, used, sep);
}

}  // namespace oracle
