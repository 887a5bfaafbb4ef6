#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mgfield/errors.hpp"
#include "mgfield/graph.hpp"

namespace mgfield {

/// What a labeled matrix's entries mean. Checks and the CLI use this to
/// reject matrices of the wrong kind early.
enum class MatrixKind { distance, covariance, precision };

/// A symmetric matrix whose rows and columns are labeled by a point set.
/// Construction enforces symmetry to a relative tolerance of 1e-12 and
/// stores the symmetrized part, so downstream code can rely on exact
/// symmetry.
class LabeledMatrix {
public:
  LabeledMatrix(PointSet labels, Eigen::MatrixXd entries, MatrixKind kind);

  const PointSet& labels() const noexcept { return labels_; }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  MatrixKind kind() const noexcept { return kind_; }
  int size() const noexcept { return static_cast<int>(entries_.rows()); }

  double operator()(int i, int j) const { return entries_(i, j); }

private:
  PointSet labels_;
  Eigen::MatrixXd entries_;
  MatrixKind kind_;
};

/// Lower Cholesky factor of a positive-definite labeled matrix.
struct SpdFactor {
  PointSet labels;
  Eigen::MatrixXd lower;
};

/// Cholesky factorization with an explicit pivot threshold: a pivot at row
/// k must exceed 1e-12 times the largest diagonal entry, otherwise
/// NotPositiveDefinite is thrown with index k.
SpdFactor factorize_spd(const LabeledMatrix& m);

/// Inverse via the Cholesky factor. Covariance and precision kinds swap;
/// other kinds fail factorization.
LabeledMatrix invert_spd(const LabeledMatrix& m);

/// Conditional law of the `targets` coordinates of a centered Gaussian
/// with covariance `sigma`, given that the `given` coordinates equal
/// `values`. Index sets must be disjoint and in range.
struct ConditionalGaussian {
  std::vector<int> targets;
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

ConditionalGaussian conditional_gaussian(const LabeledMatrix& sigma,
                                         const std::vector<int>& targets,
                                         const std::vector<int>& given,
                                         const Eigen::VectorXd& values);

/// Correlation of coordinates i and j after conditioning on `given`.
/// Result is clamped into [-1, 1].
double partial_correlation(const LabeledMatrix& sigma, int i, int j,
                           const std::vector<int>& given);

/// Draws `n` independent samples of a centered Gaussian, one per column.
/// A covariance matrix is sampled as L z; a precision matrix by solving
/// L^T x = z. Noise comes from mt19937_64 with the given seed, turned into
/// normals by the Box-Muller transform on 53-bit uniforms, so output is
/// deterministic for fixed (matrix, seed, n).
Eigen::MatrixXd sample_gaussian(const LabeledMatrix& m, std::uint64_t seed, int n);

}  // namespace mgfield
