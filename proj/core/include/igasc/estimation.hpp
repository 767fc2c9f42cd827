#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "igasc/mv_model.hpp"
#include "igasc/obs_models.hpp"
#include "igasc/optimizer.hpp"

namespace igasc {

/// Lower bound for nu in estimation, so that the t variance exists.
inline constexpr double kNuFloor = 2.001;
/// Fits on fewer observations run, but are flagged as short.
inline constexpr std::size_t kMinFitLength = 30;

/// One row of a fitted-parameter table on the natural scale. Standard
/// errors and intervals are NaN when the Hessian is not invertible.
struct ParamEstimate {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

template <typename Params>
struct FitResult {
  Params theta_hat;
  std::vector<ParamEstimate> params;
  double loglik = 0.0;
  bool converged = false;
  bool std_errors_defined = false;
  bool short_sample = false;
  int iterations = 0;
  int eval_count = 0;
};

struct FitOptions {
  OptimOptions optim;
  double offset = kDefaultOffset;
};

// Unconstrained parameterization:
//   z = (mu, atanh(phi), log(psi), [log(nu - 2.001) | log(k)])
std::vector<std::string> param_names(Family family);
std::vector<double> to_unconstrained(Family family, const Theta& theta);
Theta from_unconstrained(Family family, std::span<const double> z, double offset);
std::vector<double> natural_params(Family family, const Theta& theta);

// Multivariate: per series (mu_i, atanh(phi_i), log(psi_i)), then one
// logit(angle / pi) per correlation angle.
std::vector<std::string> mv_param_names(int dim);
std::vector<double> mv_to_unconstrained(const MvTheta& theta);
MvTheta mv_from_unconstrained(std::span<const double> z, int dim, double offset);
/// Per-series (mu, phi, psi), then correlations rho_{i,j}, i > j, row-major.
std::vector<double> mv_natural_params(const MvTheta& theta);

/// Moment-based starting values.
Theta initial_values(Family family, std::span<const double> data, double offset = kDefaultOffset);
MvTheta mv_initial_values(const Eigen::MatrixXd& data, double offset = kDefaultOffset);

FitResult<Theta> fit(Family family, std::span<const double> data,
                     const std::optional<Theta>& init = std::nullopt, const FitOptions& options = {});

FitResult<MvTheta> fit_mv(const Eigen::MatrixXd& data, const std::optional<MvTheta>& init = std::nullopt,
                          const FitOptions& options = {});

/// Observed-information standard errors for a minimized negative
/// log-likelihood over z, mapped to natural parameters by the delta method.
/// Returns false (with NaN errors) if the Hessian is not positive definite.
bool fill_standard_errors(const Objective& neg_loglik, std::span<const double> z_hat,
                          const std::function<std::vector<double>(std::span<const double>)>& natural,
                          const std::vector<std::string>& names, std::vector<ParamEstimate>& out);

}  // namespace igasc
