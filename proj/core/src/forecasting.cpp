#include "igasc/forecasting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "igasc/errors.hpp"
#include "igasc/parallel.hpp"
#include "igasc/quadrature.hpp"
#include "igasc/rng.hpp"
#include "igasc/simulation.hpp"
#include "igasc/specfun.hpp"

namespace igasc {
namespace {

// Paths share one Rng sub-stream per block of this size.
constexpr std::size_t kPathBlock = 256;

std::size_t block_count(std::size_t n) { return (n + kPathBlock - 1) / kPathBlock; }

// Calls fn(alpha, weight) for each quadrature node of the state law.
template <typename Fn>
void for_each_node(const PredictiveDensity& pd, Fn&& fn) {
  if (pd.state.variance <= 0.0) {
    fn(pd.state.mean, 1.0);
    return;
  }
  const GaussHermiteRule& rule = gauss_hermite(pd.nodes);
  const double sd = std::sqrt(pd.state.variance);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) fn(pd.state.mean + sd * rule.nodes[i], rule.weights[i]);
}

// E[eps^r] for the standardized observation.
std::optional<double> eps_raw_moment(Family family, const ObsParams& params, int r) {
  switch (family) {
    case Family::GaussVol:
      return r == 2 ? 1.0 : 3.0;
    case Family::TVol: {
      const double nu = params.shape;
      if (r == 2) return 1.0;
      if (nu <= 4.0) return std::nullopt;
      return 3.0 * (nu - 2.0) / (nu - 4.0);
    }
    case Family::ExpDur:
      return std::tgamma(r + 1.0);
    case Family::WeibullDur: {
      const double k = params.shape;
      return std::pow(weibull_beta(k), r) * std::exp(specfun::log_gamma(1.0 + r / k));
    }
  }
  return std::nullopt;
}

}  // namespace

PredictiveDensity make_predictive(Family family, const Theta& theta, double alpha_next, int horizon, int nodes) {
  if (nodes < 1) throw UsageError("make_predictive: nodes must be >= 1");
  validate_obs_params(family, theta.obs());
  return PredictiveDensity{family, theta, forecast_state(theta.ar(), alpha_next, horizon), nodes};
}

double predictive_pdf(const PredictiveDensity& pd, double y) {
  const ObsKernel kernel(pd.family, pd.theta.obs());
  if (!is_volatility(pd.family) && y <= 0.0) return 0.0;
  double total = 0.0;
  for_each_node(pd, [&](double alpha, double w) { total += w * std::exp(kernel.logpdf(y, alpha)); });
  return total;
}

double predictive_cdf(const PredictiveDensity& pd, double y) {
  const ObsKernel kernel(pd.family, pd.theta.obs());
  if (!is_volatility(pd.family) && y <= 0.0) return 0.0;
  double total = 0.0;
  for_each_node(pd, [&](double alpha, double w) { total += w * kernel.pit(y, alpha); });
  return total;
}

PredictiveMoments predictive_moments(const PredictiveDensity& pd) {
  const double m = pd.state.mean;
  const double v = pd.state.variance;
  const ObsParams obs = pd.theta.obs();
  // y = eps * exp(c alpha), c = 1/2 or 1.
  const double c = is_volatility(pd.family) ? 0.5 : 1.0;
  auto scale_moment = [&](int r) {
    const double s = c * r;
    return std::exp(s * m + 0.5 * s * s * v);
  };
  PredictiveMoments out;
  if (is_volatility(pd.family)) {
    const double m2 = *eps_raw_moment(pd.family, obs, 2) * scale_moment(2);
    out.mean = 0.0;
    out.variance = m2;
    if (const auto e4 = eps_raw_moment(pd.family, obs, 4)) out.kurtosis = *e4 * scale_moment(4) / (m2 * m2);
    return out;
  }
  double raw[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
  for (int r = 1; r <= 4; ++r) raw[r] = *eps_raw_moment(pd.family, obs, r) * scale_moment(r);
  const double mu = raw[1];
  out.mean = mu;
  out.variance = raw[2] - mu * mu;
  const double central4 = raw[4] - 4.0 * mu * raw[3] + 6.0 * mu * mu * raw[2] - 3.0 * mu * mu * mu * mu;
  out.kurtosis = central4 / (out.variance * out.variance);
  return out;
}

double predictive_quantile(const PredictiveDensity& pd, double p) {
  if (!(p > 0.0 && p < 1.0)) throw UsageError("predictive_quantile: p must lie in (0, 1)");
  const bool positive = !is_volatility(pd.family);
  const double scale = std::sqrt(std::max(predictive_moments(pd).variance, 1e-300));
  double lo = positive ? 0.0 : -scale;
  double hi = scale;
  for (int i = 0; i < 200 && predictive_cdf(pd, hi) < p; ++i) hi *= 2.0;
  if (!positive) {
    for (int i = 0; i < 200 && predictive_cdf(pd, lo) > p; ++i) lo *= 2.0;
  }
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (predictive_cdf(pd, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> simulate_ahead(Family family, const Theta& theta, double alpha_next, int horizon,
                                   std::size_t n_paths, std::uint64_t seed, int threads) {
  if (horizon < 1) throw UsageError("simulate_ahead: horizon must be >= 1");
  const ArSpec spec = theta.ar();
  const ObsKernel kernel(family, theta.obs());
  std::vector<double> out(n_paths);
  parallel_for(
      block_count(n_paths),
      [&](std::size_t b) {
        Rng rng(seed, static_cast<std::uint64_t>(horizon), b);
        for (std::size_t i = b * kPathBlock; i < std::min(n_paths, (b + 1) * kPathBlock); ++i) {
          double alpha = alpha_next;
          for (int step = 1;; ++step) {
            const double y = destandardize(family, draw_standardized(family, kernel.params(), rng), alpha);
            if (step == horizon) {
              out[i] = y;
              break;
            }
            alpha = step_ar1(spec, alpha, kernel.innovation(y, alpha).eta);
          }
        }
      },
      threads);
  return out;
}

Eigen::MatrixXd mv_one_step_covariance(const MvTheta& theta, const Eigen::VectorXd& alpha_next) {
  validate(theta);
  if (alpha_next.size() != theta.dim()) throw UsageError("mv_one_step_covariance: dimension mismatch");
  const Eigen::VectorXd d = (0.5 * alpha_next.array()).exp();
  return d.asDiagonal() * theta.corr.values() * d.asDiagonal();
}

Eigen::MatrixXd mv_forecast(const MvTheta& theta, const Eigen::VectorXd& alpha_next, int horizon,
                            std::size_t n_paths, std::uint64_t seed, int threads) {
  validate(theta);
  if (horizon < 1) throw UsageError("mv_forecast: horizon must be >= 1");
  const int dim = theta.dim();
  if (alpha_next.size() != dim) throw UsageError("mv_forecast: dimension mismatch");
  const Eigen::MatrixXd& chol = theta.corr.cholesky();
  const ObsKernel kernel(Family::GaussVol, ObsParams{0.0, theta.offset});
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n_paths), dim);
  parallel_for(
      block_count(n_paths),
      [&](std::size_t b) {
        Rng rng(seed, static_cast<std::uint64_t>(horizon), b);
        Eigen::VectorXd alpha(dim), z(dim), y(dim);
        for (std::size_t path = b * kPathBlock; path < std::min(n_paths, (b + 1) * kPathBlock); ++path) {
          alpha = alpha_next;
          for (int step = 1;; ++step) {
            for (int i = 0; i < dim; ++i) z(i) = rng.normal();
            y.noalias() = chol * z;
            y.array() *= (0.5 * alpha.array()).exp();
            if (step == horizon) {
              out.row(static_cast<Eigen::Index>(path)) = y.transpose();
              break;
            }
            for (int i = 0; i < dim; ++i) {
              alpha(i) = step_ar1(theta.series[i], alpha(i), kernel.innovation(y(i), alpha(i)).eta);
            }
          }
        }
      },
      threads);
  return out;
}

}  // namespace igasc
