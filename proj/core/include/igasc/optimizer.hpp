#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace igasc {

/// Objective over an unconstrained vector. Non-finite values and exceptions
/// are treated as +infinity by the minimizer.
using Objective = std::function<double(std::span<const double>)>;

struct OptimOptions {
  int max_evals = 20000;      ///< per stage
  double x_tol = 1e-8;        ///< final parameter change
  double f_tol = 1e-10;       ///< final function change
  double simplex_step = 0.3;  ///< initial Nelder-Mead edge length
  bool polish = true;         ///< run the quasi-Newton stage
};

struct OptimResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  int evals = 0;
};

/// Nelder-Mead, one restart from the incumbent, then a finite-difference
/// BFGS polish.
OptimResult minimize(const Objective& f, std::vector<double> x0, const OptimOptions& options = {});

/// Plain Nelder-Mead (adaptive coefficients). Exposed for testing.
OptimResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimOptions& options);

/// Central-difference gradient with step 1e-5 * max(1, |x_i|).
Eigen::VectorXd fd_gradient(const Objective& f, std::span<const double> x);

/// Central-difference Hessian with step 1e-4 * max(1, |x_i|).
Eigen::MatrixXd fd_hessian(const Objective& f, std::span<const double> x);

/// Covariance of a transformed estimate: J C J' with J the central-difference
/// Jacobian of `map` at `x`.
Eigen::MatrixXd delta_method(const std::function<std::vector<double>(std::span<const double>)>& map,
                             std::span<const double> x, const Eigen::MatrixXd& cov);

/// Inverse of a symmetric positive-definite matrix, or nullopt if it is not.
std::optional<Eigen::MatrixXd> spd_inverse(const Eigen::MatrixXd& m);

}  // namespace igasc
