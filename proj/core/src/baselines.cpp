#include "igasc/baselines.hpp"

#include <cmath>
#include <numbers>

#include "igasc/errors.hpp"
#include "igasc/specfun.hpp"

namespace igasc {
namespace {

double logit(double p) { return std::log(p / (1.0 - p)); }
double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Log-density of a unit-variance innovation, cached constants.
class GarchDensity {
 public:
  GarchDensity(GarchConditional cond, double nu) : cond_(cond), nu_(nu) {
    if (cond_ == GarchConditional::StudentT) {
      log_c_ = -specfun::log_beta(0.5, 0.5 * nu) - 0.5 * std::log(nu - 2.0);
    }
  }
  double logpdf(double eps) const {
    if (cond_ == GarchConditional::Gaussian) return specfun::std_normal_logpdf(eps);
    return log_c_ - 0.5 * (nu_ + 1.0) * std::log1p(eps * eps / (nu_ - 2.0));
  }
  double cdf(double eps) const {
    if (cond_ == GarchConditional::Gaussian) return specfun::std_normal_cdf(eps);
    return specfun::student_t_cdf(eps * std::sqrt(nu_ / (nu_ - 2.0)), nu_);
  }

 private:
  GarchConditional cond_;
  double nu_;
  double log_c_ = 0.0;
};

double sample_variance(std::span<const double> data) {
  double m = 0.0;
  for (double v : data) m += v;
  m /= static_cast<double>(data.size());
  double s = 0.0;
  for (double v : data) s += (v - m) * (v - m);
  return s / static_cast<double>(data.size());
}

}  // namespace

void validate(GarchConditional cond, const GarchTheta& theta) {
  if (!(theta.omega > 0.0) || !(theta.alpha >= 0.0) || !(theta.beta >= 0.0)) {
    throw DomainError("garch: omega must be positive, alpha and beta non-negative");
  }
  if (!(theta.alpha + theta.beta < 1.0)) throw StationarityError("garch: alpha + beta must be < 1");
  if (cond == GarchConditional::StudentT && !(theta.nu > 2.0)) throw DomainError("garch: nu must exceed 2");
}

GarchFilterOutput garch_filter(GarchConditional cond, std::span<const double> data, const GarchTheta& theta) {
  validate(cond, theta);
  const GarchDensity density(cond, theta.nu);
  GarchFilterOutput out;
  out.sigma2.resize(data.size());
  out.per_obs_loglik.resize(data.size());
  double s2 = theta.omega / (1.0 - theta.alpha - theta.beta);
  for (std::size_t t = 0; t < data.size(); ++t) {
    const double y = data[t];
    if (!std::isfinite(y)) throw ObservationError(t, "non-finite observation");
    out.sigma2[t] = s2;
    const double l = density.logpdf(y / std::sqrt(s2)) - 0.5 * std::log(s2);
    out.per_obs_loglik[t] = l;
    out.loglik += l;
    s2 = theta.omega + theta.alpha * y * y + theta.beta * s2;
  }
  return out;
}

std::vector<double> garch_pit(GarchConditional cond, std::span<const double> data, const GarchTheta& theta) {
  const GarchFilterOutput f = garch_filter(cond, data, theta);
  const GarchDensity density(cond, theta.nu);
  std::vector<double> u(data.size());
  for (std::size_t t = 0; t < data.size(); ++t) u[t] = density.cdf(data[t] / std::sqrt(f.sigma2[t]));
  return u;
}

std::vector<std::string> garch_param_names(GarchConditional cond) {
  std::vector<std::string> names{"omega", "alpha", "beta"};
  if (cond == GarchConditional::StudentT) names.emplace_back("nu");
  return names;
}

std::vector<double> garch_natural_params(GarchConditional cond, const GarchTheta& theta) {
  std::vector<double> v{theta.omega, theta.alpha, theta.beta};
  if (cond == GarchConditional::StudentT) v.push_back(theta.nu);
  return v;
}

std::vector<double> garch_to_unconstrained(GarchConditional cond, const GarchTheta& theta) {
  validate(cond, theta);
  const double persistence = theta.alpha + theta.beta;
  if (!(persistence > 0.0) || !(theta.alpha > 0.0) || !(theta.beta > 0.0)) {
    throw DomainError("garch_to_unconstrained: alpha and beta must be strictly positive");
  }
  std::vector<double> z{std::log(theta.omega), logit(persistence), logit(theta.alpha / persistence)};
  if (cond == GarchConditional::StudentT) {
    if (!(theta.nu > kNuFloor)) throw DomainError("garch_to_unconstrained: nu must exceed 2.001");
    z.push_back(std::log(theta.nu - kNuFloor));
  }
  return z;
}

GarchTheta garch_from_unconstrained(GarchConditional cond, std::span<const double> z) {
  const std::size_t need = cond == GarchConditional::StudentT ? 4 : 3;
  if (z.size() != need) throw UsageError("garch_from_unconstrained: wrong parameter count");
  GarchTheta theta;
  theta.omega = std::exp(z[0]);
  const double persistence = logistic(z[1]);
  const double share = logistic(z[2]);
  theta.alpha = persistence * share;
  theta.beta = persistence * (1.0 - share);
  theta.nu = cond == GarchConditional::StudentT ? kNuFloor + std::exp(z[3]) : 8.0;
  return theta;
}

FitResult<GarchTheta> garch_fit(GarchConditional cond, std::span<const double> data,
                                const std::optional<GarchTheta>& init, const OptimOptions& options) {
  if (data.size() < 2) throw UsageError("garch_fit: need at least two observations");
  GarchTheta start;
  if (init) {
    start = *init;
  } else {
    start.alpha = 0.1;
    start.beta = 0.85;
    start.omega = std::max(sample_variance(data), 1e-8) * 0.05;
    start.nu = 8.0;
  }
  const Objective neg_loglik = [&](std::span<const double> z) {
    return -garch_filter(cond, data, garch_from_unconstrained(cond, z)).loglik;
  };
  const OptimResult opt = minimize(neg_loglik, garch_to_unconstrained(cond, start), options);

  FitResult<GarchTheta> res;
  res.theta_hat = garch_from_unconstrained(cond, opt.x);
  res.loglik = garch_filter(cond, data, res.theta_hat).loglik;
  res.converged = opt.converged;
  res.iterations = opt.iterations;
  res.eval_count = opt.evals;
  res.short_sample = data.size() < kMinFitLength;
  const auto natural = [&](std::span<const double> z) {
    return garch_natural_params(cond, garch_from_unconstrained(cond, z));
  };
  res.std_errors_defined = fill_standard_errors(neg_loglik, opt.x, natural, garch_param_names(cond), res.params);
  return res;
}

}  // namespace igasc
