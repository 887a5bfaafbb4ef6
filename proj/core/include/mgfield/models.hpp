#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mgfield/graph.hpp"
#include "mgfield/report.hpp"
#include "mgfield/spd.hpp"

namespace mgfield {

/// Parameters of the isotropic exponential kernel sigma^2 exp(-kappa h).
struct ExpKernelParams {
  double kappa;
  double sigma;
};

/// Covariance matrix sigma^2 exp(-kappa d) from a distance matrix. The
/// result is certified positive definite by factorization, so an invalid
/// kernel (possible on graphs with cycles) throws NotPositiveDefinite.
LabeledMatrix exp_covariance(const LabeledMatrix& dist, const ExpKernelParams& p);

/// Parameters of the vertex Gaussian field with exponential range kappa,
/// scale tau, on a graph whose edges all have length ell.
struct WmParams {
  double kappa;
  double tau;
  double ell;
};

/// Vertex precision matrix of the field: with c = kappa tau^2 / sinh(kappa ell),
/// diagonal entries c cosh(kappa ell) d_i and entry -c for each edge
/// between distinct vertices (parallel edges add). Requires uniform edge
/// lengths and no self-loops.
LabeledMatrix wm_alpha1_precision(const MetricGraph& g, const WmParams& p);

/// Conditional autoregression form of the same field: at vertex i,
/// E(x_i | rest) = beta_i * sum of the neighbors and
/// Var(x_i | rest) = 1 / kappa_i, with beta_i = 1 / (d_i cosh(kappa ell))
/// and kappa_i = kappa tau^2 d_i / tanh(kappa ell).
struct CarParams {
  std::vector<double> beta;
  std::vector<double> kappa;
};

CarParams car_parameters(const MetricGraph& g, const WmParams& p);

/// Precision matrix assembled from conditional autoregression parameters:
/// Q_ii = kappa_i and Q_ij = -kappa_i beta_i per edge between i and j.
LabeledMatrix car_precision(const MetricGraph& g, const CarParams& c);

/// Precision of the standard first-order autoregression: tau^2 (a + d_i)
/// on the diagonal and -tau^2 per (multigraph) edge. Returned as a raw
/// matrix since a = 0 makes it the graph Laplacian, which is singular.
Eigen::MatrixXd standard_car_precision(const MetricGraph& g, double a, double tau);

/// Verifies that for small kappa the rescaled vertex precision
/// Q sinh(kappa ell) / (kappa tau^2) approaches the intrinsic pattern
/// (degrees on the diagonal, -1 per edge), with deviation at most
/// 10 * kappa * ell.
CheckReport intrinsic_car_limit_check(const MetricGraph& g, double tau, double ell,
                                      double kappa_small);

}  // namespace mgfield
