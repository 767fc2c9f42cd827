#pragma once

#include <functional>
#include <span>
#include <vector>

#include "igasc/obs_models.hpp"

namespace igasc {

struct KsResult {
  double statistic_d = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Upper tail of the asymptotic Kolmogorov distribution, P(K > lambda).
double kolmogorov_pvalue(double lambda);

/// One-sample KS test of `x` against a continuous CDF.
KsResult ks_test(std::span<const double> x, const std::function<double(double)>& cdf);

/// KS test against Uniform(0, 1); the p-value uses sqrt(n) * D.
KsResult ks_uniform_test(std::span<const double> u);

/// Half-width of the DKW band at confidence 1 - alpha.
double dkw_bound(std::size_t n, double alpha);

std::vector<double> sample_acf(std::span<const double> x, int max_lag);

/// Non-excess kurtosis m4 / m2^2.
double sample_kurtosis(std::span<const double> x);

struct PortmanteauResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
};

PortmanteauResult ljung_box(std::span<const double> x, int lags);
PortmanteauResult jarque_bera(std::span<const double> x);

/// Variance of log(Z^2) for standard normal Z used in the log-square ACF.
inline constexpr double kLogChiSqVariance = 4.93;

/// phi^tau sigma2_alpha / (sigma2_alpha + c) for tau = 1..max_lag, with
/// c = 4.93 or pi^2 / 2 when `exact_constant` is set. Gaussian volatility only.
std::vector<double> theoretical_acf_logy2(Family family, const Theta& theta, int max_lag,
                                          bool exact_constant = false);

/// E[eta log(eps^2)] for Gaussian volatility with zero offset, where
/// eta = Phi^{-1}(chi1_cdf(eps^2)).
inline constexpr double kEtaLogChiSqCovariance = 2.103902884536560;

/// The log-square ACF with the feedback of y_t into alpha_{t+1}:
/// (phi^tau sigma2_alpha + phi^(tau-1) psi E[eta log eps^2]) / (sigma2_alpha + c).
/// theoretical_acf_logy2 omits the second term, which is only valid when the
/// state noise is independent of the observation noise.
std::vector<double> feedback_acf_logy2(Family family, const Theta& theta, int max_lag,
                                       bool exact_constant = false);

/// 3 exp(sigma2_alpha). Gaussian volatility only.
double theoretical_kurtosis(Family family, const Theta& theta);

/// Conditional-CDF residuals F(y_t | y_{1:t-1}) along the filtered path.
std::vector<double> pit_series(Family family, std::span<const double> data, const Theta& theta);

}  // namespace igasc
