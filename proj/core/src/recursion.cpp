#include "igasc/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "igasc/errors.hpp"
#include "igasc/rng.hpp"

namespace igasc {
namespace {

struct ArmaStart {
  std::vector<double> alpha_hist;  // alpha_t, alpha_{t-1}, ... (p entries)
  std::vector<double> eta_hist;    // eta_{t-1}, ..., eta_{t-q} (q entries)
  double alpha_first;
};

FilterOutput run_arma(const ObsKernel& kernel, std::span<const double> data, const ArmaSpec& spec,
                      const ArmaStart& start) {
  const std::size_t n = data.size();
  const std::size_t p = spec.p();
  const std::size_t q = spec.q();
  FilterOutput out;
  out.alpha.resize(n);
  out.eta.resize(n);
  out.u.resize(n);
  out.eps.resize(n);
  out.per_obs_loglik.resize(n);

  // Histories, most recent first.
  std::vector<double> alpha_hist(start.alpha_hist);
  std::vector<double> eta_hist(q + 1, 0.0);
  for (std::size_t j = 0; j < q; ++j) eta_hist[j + 1] = start.eta_hist[j];
  double alpha = start.alpha_first;
  double total = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double y = data[t];
    try {
      out.alpha[t] = alpha;
      out.per_obs_loglik[t] = kernel.logpdf(y, alpha);
      const Innovation inn = kernel.innovation(y, alpha);
      out.u[t] = inn.u;
      out.eta[t] = inn.eta;
      out.eps[t] = standardize(kernel.family(), y, alpha);
    } catch (const ObservationError&) {
      throw;
    } catch (const DomainError& e) {
      throw ObservationError(t, e.what());
    }
    total += out.per_obs_loglik[t];
    eta_hist[0] = out.eta[t];
    if (p > 0) alpha_hist[0] = alpha;
    const double next = step_arma(spec, alpha_hist, eta_hist);
    // shift histories
    if (p > 1) std::rotate(alpha_hist.rbegin(), alpha_hist.rbegin() + 1, alpha_hist.rend());
    if (q > 0) std::rotate(eta_hist.rbegin(), eta_hist.rbegin() + 1, eta_hist.rend());
    alpha = next;
    if (p > 0) alpha_hist[0] = alpha;
  }
  out.loglik = total;
  out.alpha_next = alpha;
  return out;
}

}  // namespace

FilterOutput filter(Family family, std::span<const double> data, const Theta& theta,
                    std::optional<double> initial_alpha) {
  const ArSpec spec = theta.ar();
  const StationaryMoments m = stationary_moments(spec);
  const ObsKernel kernel(family, theta.obs());
  const std::size_t n = data.size();
  FilterOutput out;
  out.alpha.resize(n);
  out.eta.resize(n);
  out.u.resize(n);
  out.eps.resize(n);
  out.per_obs_loglik.resize(n);
  double alpha = initial_alpha.value_or(m.mu_alpha);
  double total = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double y = data[t];
    Innovation inn{};
    try {
      out.per_obs_loglik[t] = kernel.logpdf(y, alpha);
      inn = kernel.innovation(y, alpha);
    } catch (const DomainError& e) {
      throw ObservationError(t, e.what());
    }
    out.alpha[t] = alpha;
    out.u[t] = inn.u;
    out.eta[t] = inn.eta;
    out.eps[t] = standardize(family, y, alpha);
    total += out.per_obs_loglik[t];
    alpha = step_ar1(spec, alpha, inn.eta);
  }
  out.loglik = total;
  out.alpha_next = alpha;
  return out;
}

FilterOutput filter(Family family, std::span<const double> data, const ArmaTheta& theta) {
  const StationaryMoments m = stationary_moments(theta.state);
  const ObsKernel kernel(family, theta.obs);
  ArmaStart start;
  start.alpha_hist.assign(theta.state.p(), m.mu_alpha);
  start.eta_hist.assign(theta.state.q(), 0.0);
  start.alpha_first = m.mu_alpha;
  return run_arma(kernel, data, theta.state, start);
}

double arma_loglik_stationary_average(Family family, std::span<const double> data,
                                      const ArmaTheta& theta, int draws, std::uint64_t seed) {
  if (draws < 1) throw UsageError("arma_loglik_stationary_average: draws must be >= 1");
  const ArmaSpec& spec = theta.state;
  const StationaryStateLaw law = stationary_state_law(spec);
  const ObsKernel kernel(family, theta.obs);
  // Covariance may be singular (e.g. q = 0 with p = 1 is fine, but
  // deterministic components can appear); use an eigen square root.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(law.covariance);
  const Eigen::MatrixXd root =
      eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  const auto p = static_cast<Eigen::Index>(std::max<std::size_t>(spec.p(), 1));
  Rng rng(seed);
  std::vector<double> logliks;
  logliks.reserve(draws);
  Eigen::VectorXd z(law.mean.size());
  for (int d = 0; d < draws; ++d) {
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    const Eigen::VectorXd s = law.mean + root * z;
    ArmaStart start;
    start.alpha_first = s(0);
    for (std::size_t i = 0; i < spec.p(); ++i) start.alpha_hist.push_back(s(static_cast<Eigen::Index>(i)));
    for (std::size_t j = 0; j < spec.q(); ++j) start.eta_hist.push_back(s(p + static_cast<Eigen::Index>(j)));
    logliks.push_back(run_arma(kernel, data, spec, start).loglik);
  }
  const double peak = *std::max_element(logliks.begin(), logliks.end());
  double acc = 0.0;
  for (double l : logliks) acc += std::exp(l - peak);
  return peak + std::log(acc / draws);
}

MvFilterOutput filter_mv(const Eigen::MatrixXd& data, const MvTheta& theta,
                         const std::optional<Eigen::VectorXd>& initial_alpha) {
  validate(theta);
  const Eigen::Index n_obs = data.rows();
  const Eigen::Index dim = theta.dim();
  if (data.cols() != dim) throw UsageError("filter_mv: data columns must match model dimension");
  const ObsKernel kernel(Family::GaussVol, ObsParams{0.0, theta.offset});
  const Eigen::MatrixXd& chol = theta.corr.cholesky();
  const double log_const = -0.5 * static_cast<double>(dim) * std::log(2.0 * std::numbers::pi) - 0.5 * theta.corr.log_det();

  MvFilterOutput out;
  out.alpha.resize(n_obs, dim);
  out.eta.resize(n_obs, dim);
  out.u.resize(n_obs, dim);
  out.eps.resize(n_obs, dim);
  out.per_obs_loglik.resize(n_obs);
  Eigen::VectorXd alpha(dim);
  for (Eigen::Index i = 0; i < dim; ++i) alpha(i) = stationary_moments(theta.series[i]).mu_alpha;
  if (initial_alpha) {
    if (initial_alpha->size() != dim) throw UsageError("filter_mv: initial state dimension mismatch");
    alpha = *initial_alpha;
  }
  Eigen::VectorXd eps(dim);
  double total = 0.0;
  for (Eigen::Index t = 0; t < n_obs; ++t) {
    try {
      for (Eigen::Index i = 0; i < dim; ++i) {
        const double y = data(t, i);
        const Innovation inn = kernel.innovation(y, alpha(i));
        out.u(t, i) = inn.u;
        out.eta(t, i) = inn.eta;
        eps(i) = y * std::exp(-0.5 * alpha(i));
      }
    } catch (const DomainError& e) {
      throw ObservationError(static_cast<std::size_t>(t), e.what());
    }
    const Eigen::VectorXd z = chol.triangularView<Eigen::Lower>().solve(eps);
    const double ll = log_const - 0.5 * alpha.sum() - 0.5 * z.squaredNorm();
    out.per_obs_loglik[t] = ll;
    total += ll;
    out.alpha.row(t) = alpha.transpose();
    out.eps.row(t) = eps.transpose();
    for (Eigen::Index i = 0; i < dim; ++i) alpha(i) = step_ar1(theta.series[i], alpha(i), out.eta(t, i));
  }
  out.loglik = total;
  out.alpha_next = alpha;
  return out;
}

}  // namespace igasc
