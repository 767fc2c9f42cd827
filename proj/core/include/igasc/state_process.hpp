#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace igasc {

/// AR(1) state dynamics alpha_{t+1} = mu + phi * alpha_t + psi * eta_t.
struct ArSpec {
  double mu = 0.0;
  double phi = 0.0;
  double psi = 1.0;

  bool stationary() const noexcept;
};

/// ARMA(p, q) dynamics
///   alpha_{t+1} = mu + sum_i phi[i-1] alpha_{t+1-i} + psi[0] eta_t + sum_j psi[j] eta_{t-j}.
/// `psi` holds q + 1 coefficients; psi[0] loads the current innovation.
struct ArmaSpec {
  double mu = 0.0;
  std::vector<double> phi;
  std::vector<double> psi{1.0};

  ArmaSpec() = default;
  ArmaSpec(double mu_, std::vector<double> phi_, std::vector<double> psi_);
  explicit ArmaSpec(const ArSpec& ar);

  std::size_t p() const noexcept { return phi.size(); }
  std::size_t q() const noexcept { return psi.empty() ? 0 : psi.size() - 1; }

  /// Spectral radius of the AR companion matrix.
  double spectral_radius() const;
  /// All roots of 1 - phi_1 z - ... - phi_p z^p outside the unit circle.
  bool stationary() const;
};

struct StationaryMoments {
  double mu_alpha = 0.0;
  double sigma2_alpha = 0.0;
};

/// Law of alpha_{t+h} given y_{1:t}. Horizon 1 is the already-determined
/// next state, so its variance is zero.
struct StateForecast {
  double mean = 0.0;
  double variance = 0.0;
  int horizon = 1;
};

double step_ar1(const ArSpec& spec, double alpha, double eta);

/// `alpha_hist` = (alpha_t, alpha_{t-1}, ..., alpha_{t-p+1}),
/// `eta_hist` = (eta_t, eta_{t-1}, ..., eta_{t-q}).
double step_arma(const ArmaSpec& spec, std::span<const double> alpha_hist,
                 std::span<const double> eta_hist);

StationaryMoments stationary_moments(const ArSpec& spec);
StationaryMoments stationary_moments(const ArmaSpec& spec);

/// Stationary joint law of the recursion state
///   s_t = (alpha_t, ..., alpha_{t-p+1}, eta_{t-1}, ..., eta_{t-q})
/// used to initialise an ARMA filter by simulation.
struct StationaryStateLaw {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};
StationaryStateLaw stationary_state_law(const ArmaSpec& spec);

StateForecast forecast_state(const ArSpec& spec, double alpha_next, int horizon);

}  // namespace igasc
