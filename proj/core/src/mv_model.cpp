#include "igasc/mv_model.hpp"

#include <cmath>
#include <numbers>

#include "igasc/errors.hpp"

namespace igasc {

CorrMatrix::CorrMatrix(const Eigen::MatrixXd& values) : values_(values) {
  const auto n = values.rows();
  if (n < 1 || values.cols() != n) throw DomainError("correlation matrix must be square");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::fabs(values(i, i) - 1.0) > 1e-12) throw DomainError("correlation matrix needs unit diagonal");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::fabs(values(i, j) - values(j, i)) > 1e-12) throw DomainError("correlation matrix must be symmetric");
      if (!(std::fabs(values(i, j)) < 1.0)) throw DomainError("correlations must lie in (-1, 1)");
    }
  }
  values_.diagonal().setOnes();
  Eigen::LLT<Eigen::MatrixXd> llt(values_);
  if (llt.info() != Eigen::Success) throw DomainError("correlation matrix is not positive definite");
  chol_ = llt.matrixL();
  if (!(chol_.diagonal().minCoeff() > 0.0)) throw DomainError("correlation matrix is not positive definite");
  log_det_ = 2.0 * chol_.diagonal().array().log().sum();
}

CorrMatrix CorrMatrix::identity(int dim) { return CorrMatrix(Eigen::MatrixXd::Identity(dim, dim)); }

CorrMatrix corr_from_angles(std::span<const double> angles, int dim) {
  if (dim < 1 || static_cast<int>(angles.size()) != corr_param_count(dim)) {
    throw UsageError("corr_from_angles: expected N(N-1)/2 angles");
  }
  Eigen::MatrixXd chol = Eigen::MatrixXd::Zero(dim, dim);
  chol(0, 0) = 1.0;
  std::size_t k = 0;
  for (int i = 1; i < dim; ++i) {
    double remaining = 1.0;  // product of sines so far
    for (int j = 0; j < i; ++j) {
      const double a = angles[k++];
      chol(i, j) = remaining * std::cos(a);
      remaining *= std::sin(a);
    }
    chol(i, i) = remaining;
  }
  Eigen::MatrixXd values = chol * chol.transpose();
  // Rows of chol have unit norm; pin the diagonal and symmetry exactly.
  values.diagonal().setOnes();
  values = 0.5 * (values + values.transpose()).eval();
  return CorrMatrix(values);
}

std::vector<double> angles_from_corr(const CorrMatrix& corr) {
  const int dim = corr.dim();
  const Eigen::MatrixXd& chol = corr.cholesky();
  std::vector<double> angles;
  angles.reserve(corr_param_count(dim));
  for (int i = 1; i < dim; ++i) {
    double remaining = 1.0;
    for (int j = 0; j < i; ++j) {
      double c = remaining > 0.0 ? chol(i, j) / remaining : 1.0;
      c = std::clamp(c, -1.0, 1.0);
      const double a = std::acos(c);
      angles.push_back(a);
      remaining *= std::sin(a);
    }
  }
  return angles;
}

void validate(const MvTheta& theta) {
  if (theta.dim() < 1) throw UsageError("multivariate model needs at least one series");
  if (theta.corr.dim() != theta.dim()) throw UsageError("correlation matrix dimension mismatch");
  if (!(theta.offset >= 0.0)) throw DomainError("offset must be >= 0");
  for (const auto& s : theta.series) {
    if (!s.stationary()) throw StationarityError("multivariate series state requires |phi| < 1");
  }
}

double mv_cond_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& alpha, const MvTheta& theta) {
  const auto n = y.size();
  if (alpha.size() != n || theta.dim() != n) throw UsageError("mv_cond_logpdf: dimension mismatch");
  if (!y.allFinite() || !alpha.allFinite()) throw DomainError("mv_cond_logpdf: non-finite input");
  const Eigen::VectorXd eps = y.array() * (-0.5 * alpha.array()).exp();
  const Eigen::VectorXd z = theta.corr.cholesky().triangularView<Eigen::Lower>().solve(eps);
  return -0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi) - 0.5 * alpha.sum() -
         0.5 * theta.corr.log_det() - 0.5 * z.squaredNorm();
}

MvInnovation mv_innovation(const Eigen::VectorXd& y, const Eigen::VectorXd& alpha,
                           const MvTheta& theta) {
  const auto n = y.size();
  if (alpha.size() != n || theta.dim() != n) throw UsageError("mv_innovation: dimension mismatch");
  const ObsKernel kernel(Family::GaussVol, ObsParams{0.0, theta.offset});
  MvInnovation out{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const Innovation inn = kernel.innovation(y(i), alpha(i));
    out.u(i) = inn.u;
    out.eta(i) = inn.eta;
  }
  return out;
}

}  // namespace igasc
