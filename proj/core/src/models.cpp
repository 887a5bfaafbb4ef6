#include "mgfield/models.hpp"

#include <cmath>

namespace mgfield {

namespace {

void check_wm_params(const WmParams& p) {
  if (!(p.kappa > 0.0)) throw BadParams("kappa must be positive");
  if (!(p.tau > 0.0)) throw BadParams("tau must be positive");
  if (!(p.ell > 0.0)) throw BadParams("ell must be positive");
}

double common_edge_length(const MetricGraph& g, double ell) {
  if (g.has_loops())
    throw BadParams("vertex fields are not defined on graphs with self-loops");
  double l0 = 0.0;
  if (!g.uniform_edge_length(&l0))
    throw NonUniformLengths("graph edge lengths are not all equal");
  if (std::abs(l0 - ell) > 1e-12 * ell)
    throw BadParams("graph edge length " + std::to_string(l0) +
                    " does not match ell = " + std::to_string(ell));
  return l0;
}

}  // namespace

LabeledMatrix exp_covariance(const LabeledMatrix& dist, const ExpKernelParams& p) {
  if (!(p.kappa > 0.0)) throw BadParams("kappa must be positive");
  if (!(p.sigma > 0.0)) throw BadParams("sigma must be positive");
  if (dist.kind() != MatrixKind::distance)
    throw BadParams("exponential kernel needs a distance matrix");

  double s2 = p.sigma * p.sigma;
  Eigen::MatrixXd cov = s2 * (-p.kappa * dist.entries().array()).exp().matrix();
  cov.diagonal().setConstant(s2);

  LabeledMatrix out(dist.labels(), std::move(cov), MatrixKind::covariance);
  factorize_spd(out);
  return out;
}

LabeledMatrix wm_alpha1_precision(const MetricGraph& g, const WmParams& p) {
  check_wm_params(p);
  common_edge_length(g, p.ell);

  double c = p.kappa * p.tau * p.tau / std::sinh(p.kappa * p.ell);
  double b = std::cosh(p.kappa * p.ell);
  int n = g.vertex_count();

  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    q(e.u, e.v) -= c;
    q(e.v, e.u) -= c;
  }
  std::vector<int> deg = g.vertex_degrees();
  for (int i = 0; i < n; ++i) q(i, i) = c * b * deg[static_cast<size_t>(i)];

  return LabeledMatrix(PointSet::vertices(g), std::move(q), MatrixKind::precision);
}

CarParams car_parameters(const MetricGraph& g, const WmParams& p) {
  check_wm_params(p);
  common_edge_length(g, p.ell);

  std::vector<int> deg = g.vertex_degrees();
  double b = std::cosh(p.kappa * p.ell);
  double t = std::tanh(p.kappa * p.ell);

  CarParams out;
  out.beta.reserve(deg.size());
  out.kappa.reserve(deg.size());
  for (int d : deg) {
    if (d == 0) throw BadParams("isolated vertex has no conditional autoregression");
    out.beta.push_back(1.0 / (d * b));
    out.kappa.push_back(p.kappa * p.tau * p.tau * d / t);
  }
  return out;
}

LabeledMatrix car_precision(const MetricGraph& g, const CarParams& c) {
  int n = g.vertex_count();
  if (static_cast<int>(c.beta.size()) != n || static_cast<int>(c.kappa.size()) != n)
    throw BadParams("autoregression parameter count does not match vertex count");
  if (g.has_loops())
    throw BadParams("vertex fields are not defined on graphs with self-loops");
  for (double k : c.kappa)
    if (!(k > 0.0)) throw BadParams("conditional precisions must be positive");

  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    q(e.u, e.v) -= c.kappa[static_cast<size_t>(e.u)] * c.beta[static_cast<size_t>(e.u)];
    q(e.v, e.u) -= c.kappa[static_cast<size_t>(e.v)] * c.beta[static_cast<size_t>(e.v)];
  }
  for (int i = 0; i < n; ++i) q(i, i) = c.kappa[static_cast<size_t>(i)];

  // The labeled-matrix symmetry check rejects parameters whose implied
  // edge weights disagree between the two endpoints.
  return LabeledMatrix(PointSet::vertices(g), std::move(q), MatrixKind::precision);
}

Eigen::MatrixXd standard_car_precision(const MetricGraph& g, double a, double tau) {
  if (!(tau > 0.0)) throw BadParams("tau must be positive");
  int n = g.vertex_count();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    q(e.u, e.v) -= 1.0;
    q(e.v, e.u) -= 1.0;
  }
  std::vector<int> deg = g.vertex_degrees();
  for (int i = 0; i < n; ++i) q(i, i) += a + deg[static_cast<size_t>(i)];
  return tau * tau * q;
}

CheckReport intrinsic_car_limit_check(const MetricGraph& g, double tau, double ell,
                                      double kappa_small) {
  if (!(kappa_small > 0.0)) throw BadParams("kappa must be positive");
  LabeledMatrix q = wm_alpha1_precision(g, {kappa_small, tau, ell});

  int n = g.vertex_count();
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    target(e.u, e.v) -= 1.0;
    target(e.v, e.u) -= 1.0;
  }
  std::vector<int> deg = g.vertex_degrees();
  for (int i = 0; i < n; ++i) target(i, i) = deg[static_cast<size_t>(i)];

  double scale = std::sinh(kappa_small * ell) / (kappa_small * tau * tau);
  double dev = (scale * q.entries() - target).cwiseAbs().maxCoeff();
  double allowed = 10.0 * kappa_small * ell;

  CheckReport rep;
  rep.check = "intrinsic-limit";
  rep.params = {{"kappa", kappa_small}, {"tau", tau}, {"ell", ell}, {"max_deviation", dev}};
  rep.tolerances = {{"max_deviation_allowed", allowed}};
  rep.pass = dev <= allowed;
  if (!rep.pass) rep.violations.push_back({"deviation", {}, dev, ""});
  return rep;
}

}  // namespace mgfield
