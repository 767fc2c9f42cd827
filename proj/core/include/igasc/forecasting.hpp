#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "igasc/mv_model.hpp"
#include "igasc/obs_models.hpp"
#include "igasc/state_process.hpp"

namespace igasc {

inline constexpr int kDefaultQuadratureNodes = 50;

/// Predictive law of y_{t+h}: the observation density mixed over the
/// Gaussian law of alpha_{t+h}.
struct PredictiveDensity {
  Family family = Family::GaussVol;
  Theta theta;
  StateForecast state;
  int nodes = kDefaultQuadratureNodes;
};

PredictiveDensity make_predictive(Family family, const Theta& theta, double alpha_next, int horizon,
                                  int nodes = kDefaultQuadratureNodes);

double predictive_pdf(const PredictiveDensity& pd, double y);
double predictive_cdf(const PredictiveDensity& pd, double y);

struct PredictiveMoments {
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> kurtosis;  ///< empty when the fourth moment does not exist
};

/// Closed form via log-normal mixing: E[e^{s alpha}] = e^{s m + s^2 v / 2}.
PredictiveMoments predictive_moments(const PredictiveDensity& pd);

/// Bisection on the quadrature CDF to an absolute width of 1e-8.
double predictive_quantile(const PredictiveDensity& pd, double p);

/// `n_paths` draws of y_{t+h} obtained by running the model forward from
/// alpha_next. Each block of 256 consecutive paths uses its own Rng
/// sub-stream, so the output does not depend on the thread count.
std::vector<double> simulate_ahead(Family family, const Theta& theta, double alpha_next, int horizon,
                                   std::size_t n_paths, std::uint64_t seed, int threads = 0);

/// D Sigma D with D = diag(exp(alpha_next / 2)).
Eigen::MatrixXd mv_one_step_covariance(const MvTheta& theta, const Eigen::VectorXd& alpha_next);

/// Joint predictive sample of y_{t+h}, one row per path (n_paths x N).
/// Horizon 1 draws directly from N(0, D Sigma D).
Eigen::MatrixXd mv_forecast(const MvTheta& theta, const Eigen::VectorXd& alpha_next, int horizon,
                            std::size_t n_paths, std::uint64_t seed, int threads = 0);

}  // namespace igasc
