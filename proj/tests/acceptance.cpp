// Acceptance gate: one line per criterion, exit code = number of failures.
// Tolerances are pinned here and are not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mgfield/markov.hpp"
#include "mgfield/metrics.hpp"
#include "mgfield/models.hpp"
#include "support/instances.hpp"

using namespace mgfield;

namespace {

constexpr double kTadpoleGeoRelTol = 1e-8;
constexpr double kTadpoleResRelTol = 1e-6;
constexpr double kCrossBlockTol = 1e-10;
constexpr double kQ3Floor = 1e-3;
constexpr double kMtp2ZeroTol = 1e-8;
constexpr double kFaithfulnessTol = 1e-7;
constexpr double kCutIdentityTol = 1e-12;
constexpr double kConditionalDiagTol = 1e-12;
constexpr double kConditionalSchurTol = 1e-9;
constexpr double kMetricTol = 1e-10;
constexpr double kIntrinsicLimitTol = 1e-5;
constexpr double kReductionTol = 1e-10;

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<bool(std::string&)> body;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

LabeledMatrix tadpole_pipeline_precision(Metric metric, double kappa) {
  MetricGraph t = generate_tadpole();
  LabeledMatrix d = distance_matrix(t, PointSet::vertices(t), metric);
  return invert_spd(exp_covariance(d, {kappa, 1.0}));
}

bool tadpole_reproduction(Metric metric, double rel_tol, std::string& detail) {
  double worst_rel = 0.0, worst_cross = 0.0, min_q3 = 1e300;
  for (double kappa : {0.5, 1.0, 2.0}) {
    LabeledMatrix q = tadpole_pipeline_precision(metric, kappa);
    LabeledMatrix ref = tadpole_reference_precision(metric, kappa, 1.0);
    double scale = ref.entries().cwiseAbs().maxCoeff();
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        if (ref(i, j) != 0.0)
          worst_rel = std::max(worst_rel,
                               std::abs(q(i, j) - ref(i, j)) / std::abs(ref(i, j)));
        else
          worst_cross = std::max(worst_cross, std::abs(q(i, j)) / scale);
      }
    min_q3 = std::min({min_q3, std::abs(q(0, 2)), std::abs(q(1, 3)), std::abs(q(3, 5)),
                       std::abs(q(4, 6))});
  }
  detail = "max_rel=" + fmt(worst_rel) + " cross=" + fmt(worst_cross) +
           " min_q3=" + fmt(min_q3);
  return worst_rel <= rel_tol && worst_cross <= kCrossBlockTol && min_q3 > kQ3Floor;
}

bool criterion_wm_grid(std::string& detail) {
  MetricGraph t = generate_tadpole();
  RefinedGraph rg = refine(t, PointSet());
  const std::vector<std::pair<int, int>> adjacency = rg.adjacent_pairs();
  int passed = 0, total = 0;
  for (double kappa : {0.1, 0.5, 1.0, 2.0, 5.0})
    for (double tau : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      ++total;
      LabeledMatrix q = wm_alpha1_precision(t, {kappa, tau, 1.0});
      if (check_mtp2(q, kMtp2ZeroTol).pass && independence_graph(q).edges == adjacency)
        ++passed;
    }
  detail = std::to_string(passed) + "/" + std::to_string(total) + " grid points";
  return passed == total;
}

struct InstanceField {
  RefinedGraph rg;
  LabeledMatrix cov;
};

InstanceField instance_field(const instances::TreeInstance& inst) {
  RefinedGraph rg = refine(inst.graph, inst.points);
  LabeledMatrix d = geodesic_matrix(inst.graph, rg.nodes());
  LabeledMatrix cov = exp_covariance(d, {inst.kappa, 1.0});
  return {std::move(rg), std::move(cov)};
}

bool criterion_tree_mtp2(std::string& detail) {
  int passed = 0;
  double worst_offdiag = -1e300;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    instances::TreeInstance inst = instances::tree_instance(seed);
    LabeledMatrix q = invert_spd(instance_field(inst).cov);
    CheckReport rep = check_mtp2(q, kMtp2ZeroTol);
    if (rep.pass) ++passed;
    for (int i = 0; i < q.size(); ++i)
      for (int j = 0; j < q.size(); ++j)
        if (i != j) worst_offdiag = std::max(worst_offdiag, q(i, j));
  }
  detail = std::to_string(passed) + "/100 instances, max offdiag=" + fmt(worst_offdiag);
  return passed == 100;
}

bool criterion_tree_faithfulness(std::string& detail) {
  int passed = 0;
  long long tested = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    instances::TreeInstance inst = instances::tree_instance(seed);
    InstanceField field = instance_field(inst);
    FaithfulnessReport rep = verify_faithfulness(field.cov, field.rg, kFaithfulnessTol);
    if (rep.pass && rep.exhaustive) ++passed;
    tested += rep.tested;
  }
  detail = std::to_string(passed) + "/100 instances, " + std::to_string(tested) +
           " pair-subset tests";
  return passed == 100;
}

bool criterion_cut_identity(std::string& detail) {
  double worst = 0.0;
  int substantive = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    std::mt19937_64 rng(seed * 7919 + 1);
    int n = 3 + static_cast<int>(rng() % 8);
    MetricGraph g = generate_tree(n, rng(), 0.5, 2.0);
    double sigma = 0.7 + 0.1 * static_cast<double>(rng() % 9);
    double kappa = 0.3 + 0.05 * static_cast<double>(rng() % 11);

    LabeledMatrix d = geodesic_matrix(g, PointSet::vertices(g));
    LabeledMatrix cov = exp_covariance(d, {kappa, sigma});

    int a = static_cast<int>(rng() % static_cast<unsigned>(n));
    int b = static_cast<int>(rng() % static_cast<unsigned>(n));
    while (b == a) b = static_cast<int>(rng() % static_cast<unsigned>(n));

    // Middle vertex of the unique a-b path, endpoints allowed.
    int t = a;
    double best = 1e300;
    for (int v = 0; v < n; ++v)
      if (std::abs(d(a, v) + d(v, b) - d(a, b)) <= 1e-12 * d(a, b)) {
        double off_center = std::abs(d(a, v) - d(v, b));
        if (off_center < best) {
          best = off_center;
          t = v;
        }
      }
    if (t != a && t != b) ++substantive;

    double residual = std::abs(cov(t, t) * cov(a, b) - cov(a, t) * cov(b, t));
    worst = std::max(worst, residual / (sigma * sigma * sigma * sigma));
  }
  detail = "max residual=" + fmt(worst) + "x sigma^4, " + std::to_string(substantive) +
           " interior cut points";
  return worst <= kCutIdentityTol && substantive > 200;
}

bool criterion_conditional_field(std::string& detail) {
  double worst_diag = 0.0, worst_schur = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    instances::TreeInstance inst = instances::tree_instance(seed);
    LabeledMatrix cov = instance_field(inst).cov;
    int n = cov.size();

    std::mt19937_64 rng(seed + 4242);
    int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    if (k >= n) k = n - 1;
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> conditioned(all.begin(), all.begin() + k);
    std::sort(conditioned.begin(), conditioned.end());
    std::vector<int> free(all.begin() + k, all.end());
    std::sort(free.begin(), free.end());
    if (free.empty()) continue;

    LabeledMatrix cf = conditional_field(cov, conditioned);
    double max_diag = cov.entries().diagonal().maxCoeff();
    for (int i : conditioned) worst_diag = std::max(worst_diag, std::abs(cf(i, i)) / max_diag);

    // Independent route: full precision, then invert the free-block back.
    LabeledMatrix q = invert_spd(cov);
    Eigen::MatrixXd q_free(free.size(), free.size());
    for (size_t i = 0; i < free.size(); ++i)
      for (size_t j = 0; j < free.size(); ++j) q_free(i, j) = q(free[i], free[j]);
    Eigen::MatrixXd schur = q_free.llt().solve(
        Eigen::MatrixXd::Identity(q_free.rows(), q_free.cols()));
    for (size_t i = 0; i < free.size(); ++i)
      for (size_t j = 0; j < free.size(); ++j)
        worst_schur = std::max(worst_schur, std::abs(cf(free[i], free[j]) - schur(i, j)));
  }
  detail = "max cond diag=" + fmt(worst_diag) + ", max schur dev=" + fmt(worst_schur);
  return worst_diag <= kConditionalDiagTol && worst_schur <= kConditionalSchurTol;
}

bool criterion_metric_invariants(std::string& detail) {
  double worst_refine = 0.0, worst_order = 0.0, worst_tree = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MetricGraph g = instances::random_multigraph(seed);
    PointSet pts = instances::random_points(seed * 2 + 1, g).united(PointSet::vertices(g));
    PointSet extra = pts.united(instances::random_points(seed * 2 + 2, g));

    for (Metric metric : {Metric::geodesic, Metric::resistance}) {
      LabeledMatrix base = distance_matrix(g, pts, metric);
      LabeledMatrix wide = distance_matrix(g, extra, metric);
      for (int i = 0; i < pts.size(); ++i)
        for (int j = 0; j < pts.size(); ++j) {
          int wi = extra.index_of(pts[i]);
          int wj = extra.index_of(pts[j]);
          worst_refine = std::max(worst_refine, std::abs(base(i, j) - wide(wi, wj)));
        }
    }

    LabeledMatrix geo = distance_matrix(g, pts, Metric::geodesic);
    LabeledMatrix res = distance_matrix(g, pts, Metric::resistance);
    for (int i = 0; i < pts.size(); ++i)
      for (int j = 0; j < pts.size(); ++j)
        worst_order = std::max(worst_order, res(i, j) - geo(i, j));

    instances::TreeInstance inst = instances::tree_instance(seed);
    PointSet tree_pts = inst.points.united(PointSet::vertices(inst.graph));
    LabeledMatrix tg = distance_matrix(inst.graph, tree_pts, Metric::geodesic);
    LabeledMatrix tr = distance_matrix(inst.graph, tree_pts, Metric::resistance);
    worst_tree = std::max(worst_tree, (tg.entries() - tr.entries()).cwiseAbs().maxCoeff());
  }
  detail = "refine dev=" + fmt(worst_refine) + ", res-geo excess=" + fmt(worst_order) +
           ", tree dev=" + fmt(worst_tree);
  return worst_refine <= kMetricTol && worst_order <= kMetricTol && worst_tree <= kMetricTol;
}

bool criterion_intrinsic_limit(std::string& detail) {
  CheckReport rep = intrinsic_car_limit_check(generate_tadpole(), 1.0, 1.0, 1e-6);
  double dev = 0.0;
  for (const auto& [k, v] : rep.params)
    if (k == "max_deviation") dev = v;
  detail = "max deviation=" + fmt(dev);
  return rep.pass && dev <= kIntrinsicLimitTol;
}

bool criterion_conflict_detector(std::string& detail) {
  int conflicts = 0;
  for (Metric metric : {Metric::geodesic, Metric::resistance}) {
    CheckReport rep =
        isotropy_markov_conflict(generate_tadpole(), metric, {1.0, 1.0}, PointSet());
    if (!rep.pass && rep.note == "conflict") ++conflicts;
  }
  int clean = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    instances::TreeInstance inst = instances::tree_instance(seed);
    CheckReport rep = isotropy_markov_conflict(inst.graph, Metric::geodesic,
                                               {inst.kappa, 1.0}, inst.points);
    if (rep.pass) ++clean;
  }
  detail = std::to_string(conflicts) + "/2 tadpole conflicts, " + std::to_string(clean) +
           "/20 clean trees";
  return conflicts == 2 && clean == 20;
}

double report_param(const CheckReport& rep, const char* key) {
  for (const auto& [k, v] : rep.params)
    if (k == key) return v;
  return 1e300;
}

// One branch at a cut vertex, plus the cut vertex itself.
std::vector<int> branch_at_cut(const MetricGraph& g, int cut) {
  RefinedGraph rg = refine(g, PointSet());
  int first = rg.adjacency()[static_cast<size_t>(cut)][0].first;
  std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
  seen[static_cast<size_t>(cut)] = 1;
  seen[static_cast<size_t>(first)] = 1;
  std::vector<int> side{first}, stack{first};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto& [y, e] : rg.adjacency()[static_cast<size_t>(x)])
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = 1;
        side.push_back(y);
        stack.push_back(y);
      }
  }
  side.push_back(cut);
  std::sort(side.begin(), side.end());
  return side;
}

bool criterion_subgraph_reduction(std::string& detail) {
  double worst = 0.0;
  int passed = 0, total = 0;
  MetricGraph t = generate_tadpole();
  std::vector<int> left{0, 1, 2, 3};

  auto record = [&](const CheckReport& rep) {
    ++total;
    if (rep.pass) ++passed;
    worst = std::max({worst, report_param(rep, "mean_deviation"),
                      report_param(rep, "covariance_deviation")});
  };

  for (Metric metric : {Metric::geodesic, Metric::resistance}) {
    ModelSpec exp_model;
    exp_model.metric = metric;
    exp_model.kappa = 1.0;
    record(subgraph_reduction_check(t, exp_model, PointSet(), left, {3}, Eigen::VectorXd(),
                                    11, kReductionTol));
  }
  ModelSpec wm;
  wm.family = ModelSpec::Family::wm_alpha1;
  wm.kappa = 0.8;
  wm.ell = 1.0;
  record(subgraph_reduction_check(t, wm, PointSet(), left, {3}, Eigen::VectorXd(), 11,
                                  kReductionTol));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    bool uniform = (seed % 2) == 0;
    MetricGraph g = uniform ? generate_tree(5 + static_cast<int>(seed % 6), seed + 31, 1.0, 1.0)
                            : generate_tree(5 + static_cast<int>(seed % 6), seed + 31, 0.5, 2.0);
    std::vector<int> deg = g.vertex_degrees();
    int cut = -1;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (deg[static_cast<size_t>(v)] >= 2) cut = v;
    std::vector<int> side = branch_at_cut(g, cut);
    if (static_cast<int>(side.size()) >= g.vertex_count()) continue;

    ModelSpec model;
    if (uniform) {
      model.family = ModelSpec::Family::wm_alpha1;
      model.kappa = 0.9;
      model.ell = 1.0;
    } else {
      model.family = ModelSpec::Family::exp_kernel;
      model.kappa = 0.6;
    }
    record(subgraph_reduction_check(g, model, PointSet::vertices(g), side, {cut},
                                    Eigen::VectorXd(), seed, kReductionTol));
  }

  detail = std::to_string(passed) + "/" + std::to_string(total) +
           " instances, max dev=" + fmt(worst);
  return passed == total && worst <= kReductionTol;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"tadpole geodesic closed form, 1e-8 relative", 1.0,
       [](std::string& d) { return tadpole_reproduction(Metric::geodesic, kTadpoleGeoRelTol, d); }},
      {"tadpole resistance closed form, 1e-6 relative", 1.0,
       [](std::string& d) { return tadpole_reproduction(Metric::resistance, kTadpoleResRelTol, d); }},
      {"vertex precision sign pattern and adjacency over (kappa, tau) grid", 1.0,
       criterion_wm_grid},
      {"sign condition on 100 random tree fields", 30.0, criterion_tree_mtp2},
      {"exhaustive faithfulness on 100 random tree fields", 300.0,
       criterion_tree_faithfulness},
      {"covariance cut-vertex identity on 1000 tree triples", 5.0, criterion_cut_identity},
      {"conditional field against brute-force inversion on 100 instances", 10.0,
       criterion_conditional_field},
      {"metric refinement invariance, ordering, and tree equality on 100 graphs", 30.0,
       criterion_metric_invariants},
      {"intrinsic autoregression limit at kappa = 1e-6", 1.0, criterion_intrinsic_limit},
      {"isotropy-Markov conflict detector on tadpole and 20 trees", 10.0,
       criterion_conflict_detector},
      {"boundary reduction on tadpole and 20 tree instances", 10.0,
       criterion_subgraph_reduction},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.time_limit_s) {
      ok = false;
      detail += " [over time limit]";
    }
    if (!ok) ++failures;
    std::printf("[%2zu/11] %s  %s  (%s; %.0f ms, limit %.0f s)\n", i + 1,
                ok ? "PASS" : "FAIL", c.name.c_str(), detail.c_str(), elapsed * 1000.0,
                c.time_limit_s);
  }
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures;
}
