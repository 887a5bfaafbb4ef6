#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mgfield/graph.hpp"
#include "mgfield/metrics.hpp"
#include "mgfield/models.hpp"
#include "mgfield/report.hpp"
#include "mgfield/spd.hpp"

namespace mgfield {

/// Sign check of a precision matrix: passes when every diagonal entry is
/// strictly positive and every off-diagonal entry is at most
/// zero_tol * max|Q|. Violations are reported entrywise.
CheckReport check_mtp2(const LabeledMatrix& q, double zero_tol = 1e-8);

/// Pairwise independence graph read off a precision matrix: nodes are the
/// matrix labels, an edge joins i and j when |Q_ij| exceeds
/// zero_tol * max|Q|. `threshold` stores that absolute cutoff.
struct IndependenceGraph {
  PointSet nodes;
  std::vector<std::pair<int, int>> edges;
  double threshold = 0.0;

  bool adjacent(int i, int j) const noexcept;
};

IndependenceGraph independence_graph(const LabeledMatrix& q, double zero_tol = 1e-8);

/// Compares the independence graph of inverse(sigma) with the refined
/// graph's adjacency. Sigma's labels must equal the refined node set.
/// Violations are tagged "extra_edge" (dependence without adjacency) or
/// "missing_edge" (adjacency without dependence).
CheckReport markov_consistency(const LabeledMatrix& sigma, const RefinedGraph& rg,
                               double zero_tol = 1e-8);

/// A (pair, subset) combination where conditional dependence and graph
/// separation disagree.
struct FaithfulnessCounterexample {
  int t;
  int s;
  std::vector<int> subset;
  double partial_corr;
  bool separated;
};

struct FaithfulnessReport {
  bool pass = false;
  bool exhaustive = false;
  long long tested = 0;
  double zero_tol = 0.0;
  std::vector<FaithfulnessCounterexample> counterexamples;
};

/// Checks that zero partial correlation and separation in the refined
/// graph coincide for every node pair and conditioning subset. Up to 14
/// nodes all subsets are enumerated; above that, `subset_budget` subsets
/// per pair are drawn from mt19937_64 seeded per pair from `seed`.
/// Counterexamples come out sorted by (t, s, subset).
FaithfulnessReport verify_faithfulness(const LabeledMatrix& sigma, const RefinedGraph& rg,
                                       double zero_tol = 1e-8, int subset_budget = 256,
                                       std::uint64_t seed = 0);

/// Covariance of the field after conditioning the `conditioned`
/// coordinates to zero, embedded at full size: conditioned rows and
/// columns are exactly zero.
LabeledMatrix conditional_field(const LabeledMatrix& sigma,
                                const std::vector<int>& conditioned);

/// Builds the exponential-kernel covariance over the refined nodes of
/// (g, points) and runs markov_consistency on it. A kernel that is not
/// positive definite under the chosen metric yields a failing report with
/// note "kernel invalid" instead of an exception; a genuine mismatch
/// yields note "conflict" and the offending edges.
CheckReport isotropy_markov_conflict(const MetricGraph& g, Metric metric,
                                     const ExpKernelParams& p, const PointSet& points,
                                     double zero_tol = 1e-8);

/// Closed-form vertex precision of the exponential-kernel field on the
/// two-cycle graph of generate_tadpole(), for either metric. Entries are
/// rational functions of exp(kappa/4) scaled by 1/sigma^2.
LabeledMatrix tadpole_reference_precision(Metric metric, double kappa, double sigma);

/// Which covariance model a check should build.
struct ModelSpec {
  enum class Family { exp_kernel, wm_alpha1 };

  Family family = Family::exp_kernel;
  Metric metric = Metric::geodesic;
  double kappa = 1.0;
  double sigma = 1.0;
  double tau = 1.0;
  double ell = 1.0;
};

/// Kriging reduction check: predicting the interior of `subgraph` from
/// data on the boundary and exterior must agree with predicting from the
/// boundary alone inside the restricted model, provided the boundary
/// separates interior from exterior. `subgraph` and `boundary` index the
/// refined nodes; `data` holds values on boundary-plus-exterior nodes in
/// index order, or is empty to sample them from the model with `seed`.
CheckReport subgraph_reduction_check(const MetricGraph& g, const ModelSpec& model,
                                     const PointSet& points,
                                     const std::vector<int>& subgraph,
                                     const std::vector<int>& boundary,
                                     const Eigen::VectorXd& data, std::uint64_t seed,
                                     double tol = 1e-10);

}  // namespace mgfield
