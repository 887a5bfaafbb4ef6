#include "mgfield/spd.hpp"

#include <cmath>
#include <random>

namespace mgfield {

namespace {

// Cholesky with an explicit pivot floor relative to the largest diagonal
// entry. On failure reports the row index of the offending pivot.
Eigen::MatrixXd chol_lower(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  double max_diag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
  const double pivot_floor = 1e-12 * max_diag;

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double d = a(k, k) - l.row(k).head(k).squaredNorm();
    if (!(d > pivot_floor))
      throw NotPositiveDefinite(static_cast<int>(k),
                                "pivot " + std::to_string(d) + " at row " + std::to_string(k) +
                                    " is not positive");
    l(k, k) = std::sqrt(d);
    for (Eigen::Index i = k + 1; i < n; ++i)
      l(i, k) = (a(i, k) - l.row(i).head(k).dot(l.row(k).head(k))) / l(k, k);
  }
  return l;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Deterministic standard normal stream: 53-bit uniforms from mt19937_64
// pushed through the Box-Muller transform.
class NormalStream {
public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
    double u2 = (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

void check_indices(const std::vector<int>& idx, int n, const char* what) {
  for (int i : idx)
    if (i < 0 || i >= n)
      throw BadIndex(std::string(what) + " index " + std::to_string(i) + " out of range");
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  return out;
}

}  // namespace

LabeledMatrix::LabeledMatrix(PointSet labels, Eigen::MatrixXd entries, MatrixKind kind)
    : labels_(std::move(labels)), entries_(std::move(entries)), kind_(kind) {
  if (entries_.rows() != entries_.cols())
    throw BadParams("matrix is not square");
  if (labels_.size() != static_cast<int>(entries_.rows()))
    throw BadParams("matrix has " + std::to_string(entries_.rows()) + " rows but " +
                    std::to_string(labels_.size()) + " labels");
  if (entries_.size() > 0) {
    double scale = entries_.cwiseAbs().maxCoeff();
    double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
      throw BadParams("matrix is not symmetric: max asymmetry " + std::to_string(asym));
    entries_ = ((entries_ + entries_.transpose()) * 0.5).eval();
  }
}

SpdFactor factorize_spd(const LabeledMatrix& m) {
  return SpdFactor{m.labels(), chol_lower(m.entries())};
}

LabeledMatrix invert_spd(const LabeledMatrix& m) {
  Eigen::MatrixXd l = chol_lower(m.entries());
  Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(m.size(), m.size());
  l.triangularView<Eigen::Lower>().solveInPlace(inv);
  l.transpose().triangularView<Eigen::Upper>().solveInPlace(inv);
  MatrixKind kind =
      m.kind() == MatrixKind::covariance ? MatrixKind::precision : MatrixKind::covariance;
  return LabeledMatrix(m.labels(), std::move(inv), kind);
}

ConditionalGaussian conditional_gaussian(const LabeledMatrix& sigma,
                                         const std::vector<int>& targets,
                                         const std::vector<int>& given,
                                         const Eigen::VectorXd& values) {
  int n = sigma.size();
  check_indices(targets, n, "target");
  check_indices(given, n, "given");
  std::vector<char> in_given(static_cast<size_t>(n), 0);
  for (int i : given) {
    if (in_given[static_cast<size_t>(i)])
      throw BadParams("conditioning index " + std::to_string(i) + " repeated");
    in_given[static_cast<size_t>(i)] = 1;
  }
  for (int i : targets)
    if (in_given[static_cast<size_t>(i)])
      throw BadParams("index " + std::to_string(i) + " is both target and conditioned");
  if (values.size() != static_cast<Eigen::Index>(given.size()))
    throw BadParams("got " + std::to_string(values.size()) + " values for " +
                    std::to_string(given.size()) + " conditioned coordinates");

  ConditionalGaussian out;
  out.targets = targets;
  if (given.empty()) {
    out.mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(targets.size()));
    out.covariance = gather(sigma.entries(), targets, targets);
    return out;
  }

  Eigen::MatrixXd s_bb = gather(sigma.entries(), given, given);
  Eigen::MatrixXd s_ba = gather(sigma.entries(), given, targets);
  Eigen::MatrixXd l = chol_lower(s_bb);

  Eigen::MatrixXd w = l.triangularView<Eigen::Lower>().solve(s_ba);
  Eigen::VectorXd z = l.triangularView<Eigen::Lower>().solve(values);
  out.mean = w.transpose() * z;
  out.covariance = gather(sigma.entries(), targets, targets) - w.transpose() * w;
  return out;
}

double partial_correlation(const LabeledMatrix& sigma, int i, int j,
                           const std::vector<int>& given) {
  if (i == j) throw BadParams("partial correlation needs two distinct coordinates");
  ConditionalGaussian c = conditional_gaussian(
      sigma, {i, j}, given, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(given.size())));
  double den = std::sqrt(c.covariance(0, 0)) * std::sqrt(c.covariance(1, 1));
  if (!(den > 0.0))
    throw NotPositiveDefinite(i, "conditional variance vanished at coordinate " +
                                     std::to_string(i) + " or " + std::to_string(j));
  double rho = c.covariance(0, 1) / den;
  return std::clamp(rho, -1.0, 1.0);
}

Eigen::MatrixXd sample_gaussian(const LabeledMatrix& m, std::uint64_t seed, int n) {
  if (n < 1) throw BadParams("sample count must be positive");
  if (m.kind() == MatrixKind::distance)
    throw BadParams("cannot sample from a distance matrix");
  Eigen::MatrixXd l = chol_lower(m.entries());
  NormalStream normals(seed);

  Eigen::Index dim = m.entries().rows();
  Eigen::MatrixXd out(dim, n);
  Eigen::VectorXd z(dim);
  for (int j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) z(i) = normals.next();
    if (m.kind() == MatrixKind::covariance) {
      out.col(j) = l.triangularView<Eigen::Lower>() * z;
    } else {
      out.col(j) = l.transpose().triangularView<Eigen::Upper>().solve(z);
    }
  }
  return out;
}

}  // namespace mgfield
