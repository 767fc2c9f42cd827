#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "igasc/obs_models.hpp"
#include "igasc/state_process.hpp"

namespace igasc {

/// Positive-definite correlation matrix with its Cholesky factor.
class CorrMatrix {
 public:
  /// Validates symmetry, unit diagonal and positive definiteness.
  explicit CorrMatrix(const Eigen::MatrixXd& values);
  static CorrMatrix identity(int dim);

  int dim() const noexcept { return static_cast<int>(values_.rows()); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  /// Lower-triangular L with L L' = values.
  const Eigen::MatrixXd& cholesky() const noexcept { return chol_; }
  double log_det() const noexcept { return log_det_; }
  double operator()(int i, int j) const { return values_(i, j); }

 private:
  Eigen::MatrixXd values_;
  Eigen::MatrixXd chol_;
  double log_det_ = 0.0;
};

/// Hyperspherical-angle parameterization of a correlation matrix.
/// Angles are laid out row by row over the strict lower triangle:
/// (1,0), (2,0), (2,1), (3,0), ... Angles in (0, pi) give a bijection onto
/// positive-definite correlation matrices; all pi/2 gives the identity.
CorrMatrix corr_from_angles(std::span<const double> angles, int dim);
std::vector<double> angles_from_corr(const CorrMatrix& corr);

/// Number of free correlations, N (N - 1) / 2.
inline int corr_param_count(int dim) { return dim * (dim - 1) / 2; }

struct MvTheta {
  std::vector<ArSpec> series;
  CorrMatrix corr = CorrMatrix::identity(2);
  double offset = kDefaultOffset;

  int dim() const noexcept { return static_cast<int>(series.size()); }
};

/// Throws if dimensions disagree or a series is not stationary.
void validate(const MvTheta& theta);

/// log N(y; 0, D Sigma D), D = diag(exp(alpha / 2)).
double mv_cond_logpdf(const Eigen::VectorXd& y, const Eigen::VectorXd& alpha, const MvTheta& theta);

struct MvInnovation {
  Eigen::VectorXd u;
  Eigen::VectorXd eta;
};
/// Component-wise Gaussian-volatility innovation map on eps_i = y_i exp(-alpha_i / 2).
MvInnovation mv_innovation(const Eigen::VectorXd& y, const Eigen::VectorXd& alpha,
                           const MvTheta& theta);

}  // namespace igasc
