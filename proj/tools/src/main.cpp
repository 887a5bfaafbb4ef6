#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgfield/io.hpp"
#include "mgfield/markov.hpp"
#include "mgfield/metrics.hpp"
#include "mgfield/models.hpp"

using namespace mgfield;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadParams("cannot read file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text))
    throw BadParams("cannot write file \"" + out_path + "\"");
}

MetricGraph load_graph(const std::string& path) {
  return parse_graph_json(read_file(path));
}

/// Points given via --points, or every vertex when the flag is omitted.
PointSet load_points(const MetricGraph& g, const std::string& path) {
  if (path.empty()) return PointSet::vertices(g);
  return PointSet(g, parse_points_json(read_file(path))).united(PointSet::vertices(g));
}

Metric parse_metric(const std::string& name) {
  if (name == "geodesic") return Metric::geodesic;
  if (name == "resistance") return Metric::resistance;
  throw BadParams("metric must be \"geodesic\" or \"resistance\", got \"" + name + "\"");
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string cell =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    if (cell.empty()) throw BadParams(std::string(what) + ": empty entry in \"" + text + "\"");
    const char* begin = cell.c_str();
    char* end = nullptr;
    long v = std::strtol(begin, &end, 10);
    if (end != begin + cell.size())
      throw BadParams(std::string(what) + ": bad integer \"" + cell + "\"");
    out.push_back(static_cast<int>(v));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string cell =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (cell.empty() || end != begin + cell.size())
      throw BadParams(std::string(what) + ": bad number \"" + cell + "\"");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Model parameters shared by the sampling and reduction commands. The JSON
/// block form is {"model": "exp"|"wm1", "kappa": k, "sigma": s | "tau": t}
/// with an optional "ell" for wm1.
struct ModelFlags {
  std::string family = "exp";
  std::string metric = "geodesic";
  double kappa = 1.0;
  double sigma = 1.0;
  double tau = 1.0;
  double ell = 0.0;
  std::string json_path;
};

ModelSpec resolve_model(const MetricGraph& g, const ModelFlags& f) {
  ModelSpec spec;
  std::string family = f.family;
  spec.metric = parse_metric(f.metric);
  spec.kappa = f.kappa;
  spec.sigma = f.sigma;
  spec.tau = f.tau;
  spec.ell = f.ell;

  if (!f.json_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(f.json_path));
    } catch (const nlohmann::json::exception& e) {
      throw BadParams(std::string("model JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("model") || !j.at("model").is_string())
      throw BadParams("model JSON needs a string key \"model\"");
    family = j.at("model").get<std::string>();
    std::vector<std::string> allowed{"model", "kappa"};
    if (family == "exp")
      allowed.push_back("sigma");
    else
      allowed.insert(allowed.end(), {"tau", "ell"});
    for (const auto& item : j.items())
      if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
        throw BadParams("model JSON has unknown key \"" + item.key() + "\"");
    if (!j.contains("kappa") || !j.at("kappa").is_number())
      throw BadParams("model JSON needs a numeric key \"kappa\"");
    spec.kappa = j.at("kappa").get<double>();
    auto number_or = [&](const char* key, double fallback) {
      if (!j.contains(key)) return fallback;
      if (!j.at(key).is_number())
        throw BadParams(std::string("model JSON key \"") + key + "\" must be a number");
      return j.at(key).get<double>();
    };
    spec.sigma = number_or("sigma", 1.0);
    spec.tau = number_or("tau", 1.0);
    spec.ell = number_or("ell", 0.0);
  }

  if (family == "exp")
    spec.family = ModelSpec::Family::exp_kernel;
  else if (family == "wm1")
    spec.family = ModelSpec::Family::wm_alpha1;
  else
    throw BadParams("model must be \"exp\" or \"wm1\", got \"" + family + "\"");

  if (spec.family == ModelSpec::Family::wm_alpha1 && spec.ell <= 0.0) {
    double ell = 0.0;
    if (!g.uniform_edge_length(&ell))
      throw NonUniformLengths("edge lengths are not uniform; pass --ell on a uniform graph");
    spec.ell = ell;
  }
  return spec;
}

/// Covariance over the refined node set for either model family.
LabeledMatrix model_covariance(const MetricGraph& g, const ModelSpec& spec,
                               const PointSet& points) {
  RefinedGraph rg = refine(g, points);
  if (spec.family == ModelSpec::Family::exp_kernel) {
    LabeledMatrix d = distance_matrix(g, rg.nodes(), spec.metric);
    return exp_covariance(d, {spec.kappa, spec.sigma});
  }
  if (points != PointSet::vertices(g))
    throw BadParams("the vertex-precision model is defined on vertices only");
  return invert_spd(wm_alpha1_precision(g, {spec.kappa, spec.tau, spec.ell}));
}

int report_and_flag(const std::string& out_path, const CheckReport& rep) {
  emit(out_path, report_to_json(rep));
  return rep.pass ? 0 : 1;
}

int cmd_graph_validate(const std::string& graph_path, const std::string& points_path,
                       const std::string& out_path) {
  auto [n, edges] = parse_graph_fields(read_file(graph_path));
  std::vector<GraphPoint> raw;
  if (!points_path.empty()) raw = parse_points_json(read_file(points_path));

  try {
    MetricGraph g(n, std::move(edges));
    if (!points_path.empty()) {
      PointSet pts(g, raw);
      return report_and_flag(out_path, is_admissible(refine(g, pts)));
    }
    CheckReport rep;
    rep.check = "graph-valid";
    rep.pass = true;
    rep.params = {{"vertices", static_cast<double>(g.vertex_count())},
                  {"edges", static_cast<double>(g.edge_count())}};
    return report_and_flag(out_path, rep);
  } catch (const Error& e) {
    CheckReport rep;
    rep.check = "graph-valid";
    rep.pass = false;
    rep.violations.push_back({"invalid", {}, 0.0, e.what()});
    return report_and_flag(out_path, rep);
  }
}

int cmd_graph_generate(const std::string& family, int n, int rows, int cols, double length,
                       double lmin, double lmax, std::uint64_t seed,
                       const std::string& out_path) {
  MetricGraph g = [&] {
    if (family == "path") return generate_path(n, length);
    if (family == "cycle") return generate_cycle(n, length);
    if (family == "tree") return generate_tree(n, seed, lmin, lmax);
    if (family == "tadpole") return generate_tadpole();
    if (family == "lattice") return generate_lattice(rows, cols, length);
    throw BadParams("family must be one of path, cycle, tree, tadpole, lattice");
  }();
  emit(out_path, graph_to_json(g));
  return 0;
}

int cmd_dist(const std::string& graph_path, const std::string& points_path,
             const std::string& metric_name, const std::string& out_path) {
  MetricGraph g = load_graph(graph_path);
  LabeledMatrix d = distance_matrix(g, load_points(g, points_path), parse_metric(metric_name));
  emit(out_path, matrix_to_csv(d));
  return 0;
}

int cmd_model_cov(const std::string& graph_path, const std::string& points_path,
                  const std::string& metric_name, double kappa, double sigma,
                  const std::string& out_path) {
  MetricGraph g = load_graph(graph_path);
  LabeledMatrix d = distance_matrix(g, load_points(g, points_path), parse_metric(metric_name));
  emit(out_path, matrix_to_csv(exp_covariance(d, {kappa, sigma})));
  return 0;
}

int cmd_model_wm_precision(const std::string& graph_path, double kappa, double tau, double ell,
                           const std::string& out_path) {
  MetricGraph g = load_graph(graph_path);
  if (ell <= 0.0 && !g.uniform_edge_length(&ell))
    throw NonUniformLengths("edge lengths are not uniform; pass --ell on a uniform graph");
  emit(out_path, matrix_to_csv(wm_alpha1_precision(g, {kappa, tau, ell})));
  return 0;
}

int cmd_check_mtp2(const std::string& precision_path, double tol,
                   const std::string& out_path) {
  LabeledMatrix q = parse_matrix_csv(read_file(precision_path), MatrixKind::precision);
  return report_and_flag(out_path, check_mtp2(q, tol));
}

int cmd_check_independence(const std::string& precision_path, double tol,
                           const std::string& out_path) {
  LabeledMatrix q = parse_matrix_csv(read_file(precision_path), MatrixKind::precision);
  emit(out_path, independence_graph_to_json(independence_graph(q, tol)));
  return 0;
}

/// Interior points implied by a matrix's labels, so a covariance file fixes
/// its own refinement.
PointSet points_of_labels(const MetricGraph& g, const PointSet& labels) {
  std::vector<GraphPoint> interior;
  for (int i = 0; i < labels.size(); ++i)
    if (!labels[i].is_vertex()) interior.push_back(labels[i]);
  return PointSet(g, interior).united(PointSet::vertices(g));
}

int cmd_check_markov(const std::string& graph_path, const std::string& points_path,
                     const std::string& cov_path, const std::string& metric_name, double kappa,
                     double sigma, double tol, const std::string& out_path) {
  MetricGraph g = load_graph(graph_path);
  if (!cov_path.empty()) {
    LabeledMatrix cov = parse_matrix_csv(read_file(cov_path), MatrixKind::covariance);
    RefinedGraph rg = refine(g, points_of_labels(g, cov.labels()));
    return report_and_flag(out_path, markov_consistency(cov, rg, tol));
  }
  PointSet pts = points_path.empty() ? PointSet()
                                     : PointSet(g, parse_points_json(read_file(points_path)));
  CheckReport rep =
      isotropy_markov_conflict(g, parse_metric(metric_name), {kappa, sigma}, pts, tol);
  if (rep.note == "kernel invalid") {
    emit(out_path, report_to_json(rep));
    return 3;
  }
  return report_and_flag(out_path, rep);
}

int cmd_check_faithfulness(const std::string& graph_path, const std::string& points_path,
                           const std::string& cov_path, const std::string& metric_name,
                           double kappa, double sigma, double tol, int budget,
                           std::uint64_t seed, const std::string& out_path) {
  MetricGraph g = load_graph(graph_path);
  LabeledMatrix cov = [&] {
    if (!cov_path.empty())
      return parse_matrix_csv(read_file(cov_path), MatrixKind::covariance);
    PointSet pts = load_points(g, points_path);
    LabeledMatrix d = distance_matrix(g, pts, parse_metric(metric_name));
    return exp_covariance(d, {kappa, sigma});
  }();
  RefinedGraph rg = refine(g, points_of_labels(g, cov.labels()));
  FaithfulnessReport rep = verify_faithfulness(cov, rg, tol, budget, seed);
  emit(out_path, report_to_json(rep, cov.labels()));
  return rep.pass ? 0 : 1;
}

int cmd_verify_tadpole(const std::string& metric_name, double kappa, double sigma, double tol,
                       const std::string& out_path) {
  Metric metric = parse_metric(metric_name);
  if (tol <= 0.0) tol = metric == Metric::geodesic ? 1e-8 : 1e-6;
  const double zero_tol = 1e-10;

  MetricGraph t = generate_tadpole();
  LabeledMatrix d = distance_matrix(t, PointSet::vertices(t), metric);
  LabeledMatrix q = invert_spd(exp_covariance(d, {kappa, sigma}));
  LabeledMatrix ref = tadpole_reference_precision(metric, kappa, sigma);

  double scale = ref.entries().cwiseAbs().maxCoeff();
  CheckReport rep;
  rep.check = "tadpole-reference";
  rep.pass = true;
  double max_rel = 0.0, max_zero = 0.0;
  for (int i = 0; i < ref.size(); ++i)
    for (int j = 0; j < ref.size(); ++j) {
      if (ref(i, j) != 0.0) {
        double rel = std::abs(q(i, j) - ref(i, j)) / std::abs(ref(i, j));
        max_rel = std::max(max_rel, rel);
        if (rel > tol) {
          rep.pass = false;
          rep.violations.push_back({"relative_deviation", {i, j}, rel, ""});
        }
      } else {
        double dev = std::abs(q(i, j)) / scale;
        max_zero = std::max(max_zero, dev);
        if (dev > zero_tol) {
          rep.pass = false;
          rep.violations.push_back({"nonzero_cross_term", {i, j}, dev, ""});
        }
      }
    }
  rep.params = {{"kappa", kappa},
                {"sigma", sigma},
                {"max_rel_deviation", max_rel},
                {"max_zero_deviation", max_zero}};
  rep.tolerances = {{"rel_tol", tol}, {"zero_tol", zero_tol}};
  return report_and_flag(out_path, rep);
}

int cmd_reduce_check(const std::string& graph_path, const std::string& points_path,
                     const ModelFlags& flags, const std::string& subgraph_text,
                     const std::string& boundary_text, const std::string& data_text,
                     std::uint64_t seed, double tol, const std::string& out_path) {
  MetricGraph g = load_graph(graph_path);
  ModelSpec spec = resolve_model(g, flags);
  PointSet pts = points_path.empty()
                     ? PointSet::vertices(g)
                     : PointSet(g, parse_points_json(read_file(points_path)))
                           .united(PointSet::vertices(g));
  std::vector<int> sub = parse_int_list(subgraph_text, "--subgraph");
  std::vector<int> bnd = parse_int_list(boundary_text, "--boundary");
  Eigen::VectorXd data;
  if (!data_text.empty()) {
    std::vector<double> values = parse_double_list(data_text, "--data");
    data = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  }
  return report_and_flag(out_path,
                         subgraph_reduction_check(g, spec, pts, sub, bnd, data, seed, tol));
}

int cmd_sample(const std::string& graph_path, const std::string& points_path,
               const std::string& cov_path, const std::string& precision_path,
               const ModelFlags& flags, int n, std::uint64_t seed,
               const std::string& out_path) {
  LabeledMatrix m = [&] {
    if (!cov_path.empty())
      return parse_matrix_csv(read_file(cov_path), MatrixKind::covariance);
    if (!precision_path.empty())
      return parse_matrix_csv(read_file(precision_path), MatrixKind::precision);
    if (graph_path.empty())
      throw BadParams("sample needs --cov, --precision, or --graph with model flags");
    MetricGraph g = load_graph(graph_path);
    return model_covariance(g, resolve_model(g, flags), load_points(g, points_path));
  }();
  Eigen::MatrixXd draws = sample_gaussian(m, seed, n);
  emit(out_path, samples_to_csv(m.labels(), draws));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian random fields on metric graphs"};
  app.require_subcommand(1);
  int code = 0;

  std::string graph_path, points_path, out_path, metric_name = "geodesic";
  std::string cov_path, precision_path, data_text, subgraph_text, boundary_text;
  std::string family = "path";
  double kappa = 1.0, sigma = 1.0, tau = 1.0, ell = 0.0, length = 1.0;
  double lmin = 0.5, lmax = 2.0, tol = -1.0;
  int n = 2, rows = 2, cols = 2, budget = 256, draws = 1;
  std::uint64_t seed = 0;
  ModelFlags model_flags;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "Output file (stdout when omitted)");
  };
  auto add_model_flags = [&](CLI::App* cmd) {
    CLI::Option* opt_model =
        cmd->add_option("--model", model_flags.family, "Model family: exp or wm1");
    cmd->add_option("--metric", model_flags.metric, "Metric: geodesic or resistance");
    CLI::Option* opt_kappa = cmd->add_option("--kappa", model_flags.kappa, "Range parameter");
    CLI::Option* opt_sigma =
        cmd->add_option("--sigma", model_flags.sigma, "Marginal standard deviation (exp)");
    CLI::Option* opt_tau = cmd->add_option("--tau", model_flags.tau, "Precision scale (wm1)");
    CLI::Option* opt_ell =
        cmd->add_option("--ell", model_flags.ell, "Common edge length (wm1, inferred if omitted)");
    CLI::Option* opt_json = cmd->add_option("--model-json", model_flags.json_path,
                                            "JSON file with the model block");
    for (CLI::Option* o : {opt_model, opt_kappa, opt_sigma, opt_tau, opt_ell})
      opt_json->excludes(o);
  };

  CLI::App* graph = app.add_subcommand("graph", "Graph input, validation, and generation");
  graph->require_subcommand(1);
  CLI::App* validate = graph->add_subcommand("validate", "Validate a graph file");
  validate->add_option("--graph", graph_path, "Graph JSON file")->required();
  validate->add_option("--points", points_path, "Points JSON file");
  add_out(validate);
  validate->callback(
      [&] { code = cmd_graph_validate(graph_path, points_path, out_path); });

  CLI::App* generate = graph->add_subcommand("generate", "Generate a named graph family");
  generate->add_option("--family", family, "path, cycle, tree, tadpole, or lattice")
      ->required();
  generate->add_option("--n", n, "Vertex count (path, cycle, tree)");
  generate->add_option("--rows", rows, "Lattice rows");
  generate->add_option("--cols", cols, "Lattice columns");
  generate->add_option("--length", length, "Edge length (path, cycle, lattice)");
  generate->add_option("--lmin", lmin, "Minimum edge length (tree)");
  generate->add_option("--lmax", lmax, "Maximum edge length (tree)");
  generate->add_option("--seed", seed, "Random seed (tree)");
  add_out(generate);
  generate->callback([&] {
    code = cmd_graph_generate(family, n, rows, cols, length, lmin, lmax, seed, out_path);
  });

  CLI::App* dist = app.add_subcommand("dist", "Distance matrix over a point set");
  dist->add_option("--graph", graph_path, "Graph JSON file")->required();
  dist->add_option("--points", points_path, "Points JSON file (vertices when omitted)");
  dist->add_option("--metric", metric_name, "geodesic or resistance");
  add_out(dist);
  dist->callback([&] { code = cmd_dist(graph_path, points_path, metric_name, out_path); });

  CLI::App* model = app.add_subcommand("model", "Covariance and precision construction");
  model->require_subcommand(1);
  CLI::App* cov = model->add_subcommand("cov", "Isotropic exponential covariance");
  cov->add_option("--graph", graph_path, "Graph JSON file")->required();
  cov->add_option("--points", points_path, "Points JSON file (vertices when omitted)");
  cov->add_option("--metric", metric_name, "geodesic or resistance");
  cov->add_option("--kappa", kappa, "Decay rate");
  cov->add_option("--sigma", sigma, "Marginal standard deviation");
  add_out(cov);
  cov->callback([&] {
    code = cmd_model_cov(graph_path, points_path, metric_name, kappa, sigma, out_path);
  });

  CLI::App* wmp = model->add_subcommand("wm-precision", "Vertex precision matrix");
  wmp->add_option("--graph", graph_path, "Graph JSON file")->required();
  wmp->add_option("--kappa", kappa, "Range parameter");
  wmp->add_option("--tau", tau, "Precision scale");
  wmp->add_option("--ell", ell, "Common edge length (inferred when omitted)");
  add_out(wmp);
  wmp->callback(
      [&] { code = cmd_model_wm_precision(graph_path, kappa, tau, ell, out_path); });

  CLI::App* check = app.add_subcommand("check", "Structure checks with JSON reports");
  check->require_subcommand(1);
  CLI::App* mtp2 = check->add_subcommand("mtp2", "Sign check on a precision matrix");
  mtp2->add_option("--precision", precision_path, "Precision CSV file")->required();
  mtp2->add_option("--tol", tol, "Relative zero tolerance");
  add_out(mtp2);
  mtp2->callback([&] {
    code = cmd_check_mtp2(precision_path, tol > 0 ? tol : 1e-8, out_path);
  });

  CLI::App* indep = check->add_subcommand("independence-graph",
                                          "Edges read off a precision matrix");
  indep->add_option("--precision", precision_path, "Precision CSV file")->required();
  indep->add_option("--tol", tol, "Relative zero tolerance");
  add_out(indep);
  indep->callback([&] {
    code = cmd_check_independence(precision_path, tol > 0 ? tol : 1e-8, out_path);
  });

  CLI::App* markov = check->add_subcommand("markov", "Neighbor structure of a field");
  markov->add_option("--graph", graph_path, "Graph JSON file")->required();
  markov->add_option("--points", points_path, "Points JSON file");
  CLI::Option* markov_cov = markov->add_option("--cov", cov_path, "Covariance CSV file");
  markov->add_option("--metric", metric_name, "geodesic or resistance")->excludes(markov_cov);
  markov->add_option("--kappa", kappa, "Decay rate")->excludes(markov_cov);
  markov->add_option("--sigma", sigma, "Marginal standard deviation")->excludes(markov_cov);
  markov->add_option("--tol", tol, "Relative zero tolerance");
  add_out(markov);
  markov->callback([&] {
    code = cmd_check_markov(graph_path, points_path, cov_path, metric_name, kappa, sigma,
                            tol > 0 ? tol : 1e-8, out_path);
  });

  CLI::App* faith = check->add_subcommand("faithfulness",
                                          "Separation against vanishing partial correlation");
  faith->add_option("--graph", graph_path, "Graph JSON file")->required();
  faith->add_option("--points", points_path, "Points JSON file");
  CLI::Option* faith_cov = faith->add_option("--cov", cov_path, "Covariance CSV file");
  faith->add_option("--metric", metric_name, "geodesic or resistance")->excludes(faith_cov);
  faith->add_option("--kappa", kappa, "Decay rate")->excludes(faith_cov);
  faith->add_option("--sigma", sigma, "Marginal standard deviation")->excludes(faith_cov);
  faith->add_option("--tol", tol, "Partial-correlation zero tolerance");
  faith->add_option("--budget", budget, "Subsets per pair when not exhaustive");
  faith->add_option("--seed", seed, "Seed for sampled subsets");
  add_out(faith);
  faith->callback([&] {
    code = cmd_check_faithfulness(graph_path, points_path, cov_path, metric_name, kappa, sigma,
                                  tol > 0 ? tol : 1e-8, budget, seed, out_path);
  });

  CLI::App* verify = app.add_subcommand("verify", "End-to-end closed-form verification");
  verify->require_subcommand(1);
  CLI::App* tadpole = verify->add_subcommand(
      "tadpole", "Two-cycle graph precision against its closed form");
  tadpole->add_option("--metric", metric_name, "geodesic or resistance");
  tadpole->add_option("--kappa", kappa, "Decay rate");
  tadpole->add_option("--sigma", sigma, "Marginal standard deviation");
  tadpole->add_option("--tol", tol, "Relative tolerance (metric-dependent default)");
  add_out(tadpole);
  tadpole->callback(
      [&] { code = cmd_verify_tadpole(metric_name, kappa, sigma, tol, out_path); });

  CLI::App* reduce = app.add_subcommand("reduce", "Boundary-reduction checks");
  reduce->require_subcommand(1);
  CLI::App* rcheck = reduce->add_subcommand(
      "check", "Prediction from a boundary versus from everything");
  rcheck->add_option("--graph", graph_path, "Graph JSON file")->required();
  rcheck->add_option("--points", points_path, "Points JSON file (exp model only)");
  rcheck->add_option("--subgraph", subgraph_text, "Comma-separated node indices")->required();
  rcheck->add_option("--boundary", boundary_text, "Comma-separated node indices")->required();
  rcheck->add_option("--data", data_text,
                     "Comma-separated values on boundary then exterior, ascending node order");
  rcheck->add_option("--seed", seed, "Seed when sampling data");
  rcheck->add_option("--tol", tol, "Agreement tolerance");
  add_model_flags(rcheck);
  add_out(rcheck);
  rcheck->callback([&] {
    code = cmd_reduce_check(graph_path, points_path, model_flags, subgraph_text, boundary_text,
                            data_text, seed, tol > 0 ? tol : 1e-10, out_path);
  });

  CLI::App* sample = app.add_subcommand("sample", "Draw Gaussian samples");
  sample->add_option("--graph", graph_path, "Graph JSON file");
  sample->add_option("--points", points_path, "Points JSON file (vertices when omitted)");
  CLI::Option* sample_cov = sample->add_option("--cov", cov_path, "Covariance CSV file");
  CLI::Option* sample_prec =
      sample->add_option("--precision", precision_path, "Precision CSV file");
  sample_cov->excludes(sample_prec);
  add_model_flags(sample);
  sample->add_option("--n", draws, "Number of draws");
  sample->add_option("--seed", seed, "Random seed");
  add_out(sample);
  sample->callback([&] {
    code = cmd_sample(graph_path, points_path, cov_path, precision_path, model_flags, draws,
                      seed, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int parse_code = app.exit(e);
    return parse_code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::input ? 2 : 3;
  }
  return code;
}
