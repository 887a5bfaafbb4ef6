#include "mgfield/markov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mgfield {

namespace {

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
}

void require_precision(const LabeledMatrix& q, const char* what) {
  if (q.kind() != MatrixKind::precision)
    throw BadParams(std::string(what) + " needs a precision matrix");
}

// Connected components of the refined graph with the `blocked` nodes
// removed; blocked nodes get component -1.
std::vector<int> components_without(const RefinedGraph& rg, const std::vector<char>& blocked) {
  int n = rg.node_count();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int c = 0;
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (blocked[static_cast<size_t>(start)] || comp[static_cast<size_t>(start)] >= 0) continue;
    comp[static_cast<size_t>(start)] = c;
    stack.push_back(start);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& [y, eidx] : rg.adjacency()[static_cast<size_t>(x)])
        if (!blocked[static_cast<size_t>(y)] && comp[static_cast<size_t>(y)] < 0) {
          comp[static_cast<size_t>(y)] = c;
          stack.push_back(y);
        }
    }
    ++c;
  }
  return comp;
}

double pair_correlation(const Eigen::MatrixXd& cov, Eigen::Index a, Eigen::Index b) {
  double va = cov(a, a), vb = cov(b, b);
  if (!(va > 0.0) || !(vb > 0.0)) return 0.0;
  return std::clamp(cov(a, b) / (std::sqrt(va) * std::sqrt(vb)), -1.0, 1.0);
}

void require_labels_match(const LabeledMatrix& sigma, const RefinedGraph& rg) {
  if (!(sigma.labels() == rg.nodes()))
    throw BadParams("matrix labels do not match the refined node set");
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

CheckReport check_mtp2(const LabeledMatrix& q, double zero_tol) {
  require_precision(q, "sign check");
  if (!(zero_tol >= 0.0)) throw BadParams("tolerance must be non-negative");

  double threshold = zero_tol * max_abs(q.entries());
  CheckReport rep;
  rep.check = "mtp2";
  rep.tolerances = {{"zero_tol", zero_tol}, {"threshold", threshold}};

  int n = q.size();
  for (int i = 0; i < n; ++i)
    if (!(q(i, i) > 0.0))
      rep.violations.push_back({"nonpositive_diagonal", {i}, q(i, i), ""});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (q(i, j) > threshold)
        rep.violations.push_back({"positive_offdiagonal", {i, j}, q(i, j), ""});
  rep.pass = rep.violations.empty();
  return rep;
}

bool IndependenceGraph::adjacent(int i, int j) const noexcept {
  if (i == j) return false;
  std::pair<int, int> key{std::min(i, j), std::max(i, j)};
  return std::binary_search(edges.begin(), edges.end(), key);
}

IndependenceGraph independence_graph(const LabeledMatrix& q, double zero_tol) {
  require_precision(q, "independence graph");
  if (!(zero_tol >= 0.0)) throw BadParams("tolerance must be non-negative");

  IndependenceGraph ig;
  ig.nodes = q.labels();
  ig.threshold = zero_tol * max_abs(q.entries());
  int n = q.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(q(i, j)) > ig.threshold) ig.edges.emplace_back(i, j);
  return ig;
}

CheckReport markov_consistency(const LabeledMatrix& sigma, const RefinedGraph& rg,
                               double zero_tol) {
  require_labels_match(sigma, rg);
  if (!is_admissible(rg).pass)
    throw BadParams("refined graph has parallel edges or self-loops");

  LabeledMatrix q = invert_spd(sigma);
  IndependenceGraph ig = independence_graph(q, zero_tol);

  CheckReport rep;
  rep.check = "markov-consistency";
  rep.tolerances = {{"zero_tol", zero_tol}, {"threshold", ig.threshold}};

  const auto& graph_edges = rg.adjacent_pairs();
  for (const auto& e : ig.edges)
    if (!std::binary_search(graph_edges.begin(), graph_edges.end(), e))
      rep.violations.push_back({"extra_edge", {e.first, e.second}, q(e.first, e.second), ""});
  for (const auto& e : graph_edges)
    if (!ig.adjacent(e.first, e.second))
      rep.violations.push_back({"missing_edge", {e.first, e.second}, q(e.first, e.second), ""});
  rep.pass = rep.violations.empty();
  return rep;
}

FaithfulnessReport verify_faithfulness(const LabeledMatrix& sigma, const RefinedGraph& rg,
                                       double zero_tol, int subset_budget,
                                       std::uint64_t seed) {
  require_labels_match(sigma, rg);
  if (!(zero_tol >= 0.0)) throw BadParams("tolerance must be non-negative");
  if (subset_budget < 1) throw BadParams("subset budget must be positive");

  int n = rg.node_count();
  FaithfulnessReport rep;
  rep.zero_tol = zero_tol;
  rep.exhaustive = n <= 14;

  auto subset_of = [n](std::uint64_t mask) {
    std::vector<int> s;
    for (int k = 0; k < n; ++k)
      if (mask >> k & 1) s.push_back(k);
    return s;
  };

  auto examine = [&](std::uint64_t mask) {
    std::vector<int> given = subset_of(mask);
    std::vector<int> free;
    free.reserve(static_cast<size_t>(n - static_cast<int>(given.size())));
    for (int k = 0; k < n; ++k)
      if (!(mask >> k & 1)) free.push_back(k);
    if (free.size() < 2) return;

    ConditionalGaussian cond = conditional_gaussian(
        sigma, free, given, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(given.size())));

    std::vector<char> blocked(static_cast<size_t>(n), 0);
    for (int v : given) blocked[static_cast<size_t>(v)] = 1;
    std::vector<int> comp = components_without(rg, blocked);

    for (size_t a = 0; a < free.size(); ++a)
      for (size_t b = a + 1; b < free.size(); ++b) {
        double pc = pair_correlation(cond.covariance, static_cast<Eigen::Index>(a),
                                     static_cast<Eigen::Index>(b));
        bool zero = std::abs(pc) <= zero_tol;
        bool sep = comp[static_cast<size_t>(free[a])] != comp[static_cast<size_t>(free[b])];
        rep.tested += 1;
        if (zero != sep)
          rep.counterexamples.push_back({free[a], free[b], given, pc, sep});
      }
  };

  if (rep.exhaustive) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) examine(mask);
  } else {
    for (int t = 0; t < n; ++t)
      for (int s = t + 1; s < n; ++s) {
        // One engine per pair, seeded from the pair's index, so results do
        // not depend on the order pairs are visited in.
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull *
                                    (static_cast<std::uint64_t>(t) * n + s + 1)));
        for (int trial = 0; trial < subset_budget; ++trial) {
          std::uint64_t mask = 0;
          for (int k = 0; k < n; ++k)
            if (k != t && k != s && (rng() & 1)) mask |= std::uint64_t{1} << k;

          std::vector<int> given = subset_of(mask);
          ConditionalGaussian cond = conditional_gaussian(
              sigma, {t, s}, given,
              Eigen::VectorXd::Zero(static_cast<Eigen::Index>(given.size())));
          double pc = pair_correlation(cond.covariance, 0, 1);

          std::vector<char> blocked(static_cast<size_t>(n), 0);
          for (int v : given) blocked[static_cast<size_t>(v)] = 1;
          std::vector<int> comp = components_without(rg, blocked);
          bool zero = std::abs(pc) <= zero_tol;
          bool sep = comp[static_cast<size_t>(t)] != comp[static_cast<size_t>(s)];
          rep.tested += 1;
          if (zero != sep) rep.counterexamples.push_back({t, s, given, pc, sep});
        }
      }
  }

  std::sort(rep.counterexamples.begin(), rep.counterexamples.end(),
            [](const FaithfulnessCounterexample& x, const FaithfulnessCounterexample& y) {
              if (x.t != y.t) return x.t < y.t;
              if (x.s != y.s) return x.s < y.s;
              return x.subset < y.subset;
            });
  rep.counterexamples.erase(
      std::unique(rep.counterexamples.begin(), rep.counterexamples.end(),
                  [](const FaithfulnessCounterexample& x, const FaithfulnessCounterexample& y) {
                    return x.t == y.t && x.s == y.s && x.subset == y.subset;
                  }),
      rep.counterexamples.end());
  rep.pass = rep.counterexamples.empty();
  return rep;
}

LabeledMatrix conditional_field(const LabeledMatrix& sigma,
                                const std::vector<int>& conditioned) {
  if (sigma.kind() != MatrixKind::covariance)
    throw BadParams("conditioning needs a covariance matrix");
  std::vector<int> given = sorted_unique(conditioned);
  int n = sigma.size();
  std::vector<char> is_given(static_cast<size_t>(n), 0);
  for (int i : given) {
    if (i < 0 || i >= n) throw BadIndex("conditioned index " + std::to_string(i) + " out of range");
    is_given[static_cast<size_t>(i)] = 1;
  }
  std::vector<int> free;
  for (int i = 0; i < n; ++i)
    if (!is_given[static_cast<size_t>(i)]) free.push_back(i);

  ConditionalGaussian cond = conditional_gaussian(
      sigma, free, given, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(given.size())));

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (size_t a = 0; a < free.size(); ++a)
    for (size_t b = 0; b < free.size(); ++b)
      out(free[a], free[b]) =
          cond.covariance(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  return LabeledMatrix(sigma.labels(), std::move(out), MatrixKind::covariance);
}

CheckReport isotropy_markov_conflict(const MetricGraph& g, Metric metric,
                                     const ExpKernelParams& p, const PointSet& points,
                                     double zero_tol) {
  RefinedGraph rg = refine(g, points);
  if (!is_admissible(rg).pass)
    throw BadParams("point set is not admissible for this graph");

  LabeledMatrix dist = distance_matrix(g, rg.nodes(), metric);

  CheckReport rep;
  rep.check = "isotropy-markov";
  rep.params = {{"kappa", p.kappa}, {"sigma", p.sigma}};
  rep.tolerances = {{"zero_tol", zero_tol}};

  try {
    LabeledMatrix cov = exp_covariance(dist, p);
    CheckReport inner = markov_consistency(cov, rg, zero_tol);
    rep.violations = std::move(inner.violations);
    rep.tolerances = std::move(inner.tolerances);
    rep.pass = inner.pass;
    if (!rep.pass) rep.note = "conflict";
  } catch (const NotPositiveDefinite& e) {
    rep.pass = false;
    rep.note = "kernel invalid";
    rep.violations.push_back({"not_positive_definite", {e.index}, 0.0, e.what()});
  }
  return rep;
}

LabeledMatrix tadpole_reference_precision(Metric metric, double kappa, double sigma) {
  if (!(kappa > 0.0)) throw BadParams("kappa must be positive");
  if (!(sigma > 0.0)) throw BadParams("sigma must be positive");

  double q1, q2, q3, q4;
  if (metric == Metric::geodesic) {
    double e1 = std::exp(kappa);
    double e2 = e1 * e1;
    double den = (e2 - 1.0) * (e2 - 1.0);
    q1 = e2 * e2 / den;
    q2 = -e2 * e1 / den;
    q3 = e2 / den;
    q4 = (2.0 * e2 + e2 * e2 - 1.0) / den;
  } else {
    double a2 = std::exp(kappa / 2.0);
    double a4 = a2 * a2, a5 = a4 * std::exp(kappa / 4.0), a6 = a4 * a2;
    double a8 = a4 * a4, a10 = a8 * a2;
    double den1 = -3.0 * a2 - 2.0 * a4 + 2.0 * a6 + a8 + a10 + 1.0;
    q1 = a6 * (a2 + a4 + 2.0) / den1;
    q2 = -a5 / (-4.0 * a2 + 2.0 * a4 + a8 + 1.0);
    q3 = -a4 / (2.0 * a2 + 4.0 * a4 + 2.0 * a6 + a8 - 1.0);
    q4 = (3.0 * a2 + 2.0 * a4 + 2.0 * a6 + a8 + a10 - 1.0) / den1;
  }

  Eigen::MatrixXd q(7, 7);
  q << q1, q2, q3, q2, 0, 0, 0,
       q2, q1, q2, q3, 0, 0, 0,
       q3, q2, q1, q2, 0, 0, 0,
       q2, q3, q2, q4, q2, q3, q2,
       0, 0, 0, q2, q1, q2, q3,
       0, 0, 0, q3, q2, q1, q2,
       0, 0, 0, q2, q3, q2, q1;
  q /= sigma * sigma;

  return LabeledMatrix(PointSet::vertices(generate_tadpole()), std::move(q),
                       MatrixKind::precision);
}

CheckReport subgraph_reduction_check(const MetricGraph& g, const ModelSpec& model,
                                     const PointSet& points,
                                     const std::vector<int>& subgraph,
                                     const std::vector<int>& boundary,
                                     const Eigen::VectorXd& data, std::uint64_t seed,
                                     double tol) {
  if (!(tol > 0.0)) throw BadParams("tolerance must be positive");

  RefinedGraph rg = [&] {
    if (model.family == ModelSpec::Family::wm_alpha1) {
      PointSet verts = PointSet::vertices(g);
      if (!points.empty() && !(points == verts))
        throw BadParams("the vertex field is defined on the vertex set only");
      return refine(g, verts);
    }
    return refine(g, points);
  }();

  LabeledMatrix cov = [&] {
    if (model.family == ModelSpec::Family::wm_alpha1)
      return invert_spd(wm_alpha1_precision(g, {model.kappa, model.tau, model.ell}));
    LabeledMatrix dist = distance_matrix(g, rg.nodes(), model.metric);
    return exp_covariance(dist, {model.kappa, model.sigma});
  }();

  int n = cov.size();
  std::vector<int> sub = sorted_unique(subgraph);
  std::vector<int> bnd = sorted_unique(boundary);
  for (int i : sub)
    if (i < 0 || i >= n) throw BadIndex("subgraph index " + std::to_string(i) + " out of range");
  for (int i : bnd)
    if (!std::binary_search(sub.begin(), sub.end(), i))
      throw BadParams("boundary node " + std::to_string(i) + " is not in the subgraph");

  std::vector<char> in_sub(static_cast<size_t>(n), 0), in_bnd(static_cast<size_t>(n), 0);
  for (int i : sub) in_sub[static_cast<size_t>(i)] = 1;
  for (int i : bnd) in_bnd[static_cast<size_t>(i)] = 1;

  std::vector<int> interior, exterior, given_full;
  for (int i = 0; i < n; ++i) {
    if (in_sub[static_cast<size_t>(i)] && !in_bnd[static_cast<size_t>(i)]) interior.push_back(i);
    if (!in_sub[static_cast<size_t>(i)]) exterior.push_back(i);
    if (in_bnd[static_cast<size_t>(i)] || !in_sub[static_cast<size_t>(i)])
      given_full.push_back(i);
  }
  if (interior.empty()) throw BadParams("subgraph has no interior nodes");

  CheckReport rep;
  rep.check = "subgraph-reduction";
  rep.params = {{"kappa", model.kappa}};
  rep.tolerances = {{"tol", tol}};

  // The reduction is only claimed when the boundary blocks every path
  // between interior and exterior.
  std::vector<char> blocked(in_bnd.begin(), in_bnd.end());
  std::vector<int> comp = components_without(rg, blocked);
  for (int i : interior)
    for (int e : exterior)
      if (comp[static_cast<size_t>(i)] == comp[static_cast<size_t>(e)]) {
        rep.pass = false;
        rep.note = "boundary does not separate interior from exterior";
        rep.violations.push_back({"not_separated", {i, e}, 0.0, ""});
        return rep;
      }

  Eigen::VectorXd values;
  if (data.size() == 0) {
    Eigen::MatrixXd draw = sample_gaussian(cov, seed, 1);
    values.resize(static_cast<Eigen::Index>(given_full.size()));
    for (size_t k = 0; k < given_full.size(); ++k)
      values(static_cast<Eigen::Index>(k)) = draw(given_full[k], 0);
  } else if (data.size() == static_cast<Eigen::Index>(given_full.size())) {
    values = data;
  } else {
    throw BadParams("got " + std::to_string(data.size()) + " data values for " +
                    std::to_string(given_full.size()) + " boundary and exterior nodes");
  }

  ConditionalGaussian full = conditional_gaussian(cov, interior, given_full, values);

  Eigen::MatrixXd sub_entries(sub.size(), sub.size());
  for (size_t a = 0; a < sub.size(); ++a)
    for (size_t b = 0; b < sub.size(); ++b)
      sub_entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          cov(sub[a], sub[b]);
  std::vector<GraphPoint> sub_pts;
  for (int i : sub) sub_pts.push_back(cov.labels()[i]);
  LabeledMatrix sub_cov(PointSet::from_sorted(std::move(sub_pts)), std::move(sub_entries),
                        MatrixKind::covariance);

  std::vector<int> interior_pos, boundary_pos;
  Eigen::VectorXd boundary_values(static_cast<Eigen::Index>(bnd.size()));
  {
    int bk = 0;
    for (size_t a = 0; a < sub.size(); ++a) {
      if (in_bnd[static_cast<size_t>(sub[a])]) {
        boundary_pos.push_back(static_cast<int>(a));
        auto it = std::lower_bound(given_full.begin(), given_full.end(), sub[a]);
        boundary_values(bk++) =
            values(static_cast<Eigen::Index>(it - given_full.begin()));
      } else {
        interior_pos.push_back(static_cast<int>(a));
      }
    }
  }

  ConditionalGaussian reduced =
      conditional_gaussian(sub_cov, interior_pos, boundary_pos, boundary_values);

  double mean_dev = full.mean.size() > 0
                        ? (full.mean - reduced.mean).cwiseAbs().maxCoeff()
                        : 0.0;
  double cov_dev = (full.covariance - reduced.covariance).cwiseAbs().maxCoeff();
  rep.params.push_back({"mean_deviation", mean_dev});
  rep.params.push_back({"covariance_deviation", cov_dev});
  rep.pass = mean_dev <= tol && cov_dev <= tol;
  if (mean_dev > tol) rep.violations.push_back({"mean_mismatch", {}, mean_dev, ""});
  if (cov_dev > tol) rep.violations.push_back({"covariance_mismatch", {}, cov_dev, ""});
  return rep;
}

}  // namespace mgfield
