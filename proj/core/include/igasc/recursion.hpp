#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "igasc/mv_model.hpp"
#include "igasc/obs_models.hpp"

namespace igasc {

/// Output of the filtering recursion. alpha[t] is the state used for y[t];
/// `alpha_next` is alpha_{T+1}, already determined by the data.
struct FilterOutput {
  std::vector<double> alpha;
  std::vector<double> eta;
  std::vector<double> u;
  std::vector<double> eps;
  std::vector<double> per_obs_loglik;
  double loglik = 0.0;
  double alpha_next = 0.0;
};

/// Runs the observation-driven recursion from alpha_1 = mu_alpha and returns
/// the exact log-likelihood by prediction decomposition. `initial_alpha`
/// overrides alpha_1, e.g. to replay a simulated path exactly.
FilterOutput filter(Family family, std::span<const double> data, const Theta& theta,
                    std::optional<double> initial_alpha = std::nullopt);

/// ARMA(p, q) state; pre-sample states are mu_alpha and pre-sample
/// innovations are zero.
FilterOutput filter(Family family, std::span<const double> data, const ArmaTheta& theta);

/// Alternative ARMA initialisation: draws the pre-sample recursion state from
/// its stationary joint law `draws` times and returns log of the average
/// likelihood. Deterministic given `seed`.
double arma_loglik_stationary_average(Family family, std::span<const double> data,
                                      const ArmaTheta& theta, int draws, std::uint64_t seed);

/// Multivariate output. Matrices are T x N, row t is time t.
struct MvFilterOutput {
  Eigen::MatrixXd alpha;
  Eigen::MatrixXd eta;
  Eigen::MatrixXd u;
  Eigen::MatrixXd eps;
  std::vector<double> per_obs_loglik;
  double loglik = 0.0;
  Eigen::VectorXd alpha_next;
};

/// `data` is T x N with one row per time point.
MvFilterOutput filter_mv(const Eigen::MatrixXd& data, const MvTheta& theta,
                         const std::optional<Eigen::VectorXd>& initial_alpha = std::nullopt);

}  // namespace igasc
