#include "igasc/obs_models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "igasc/errors.hpp"

namespace igasc {
namespace {

using specfun::TailPair;

constexpr double kLnSqrt2Pi = 0.91893853320467274178;

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::GaussVol: return "gauss-vol";
    case Family::TVol: return "t-vol";
    case Family::ExpDur: return "exp-dur";
    case Family::WeibullDur: return "weibull-dur";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::GaussVol, Family::TVol, Family::ExpDur, Family::WeibullDur}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

bool is_volatility(Family f) noexcept { return f == Family::GaussVol || f == Family::TVol; }

bool has_shape(Family f) noexcept { return f == Family::TVol || f == Family::WeibullDur; }

void validate_obs_params(Family family, const ObsParams& params) {
  if (!(params.offset >= 0.0) || !std::isfinite(params.offset)) {
    throw DomainError("offset must be finite and >= 0");
  }
  if (family == Family::TVol && !(params.shape > 2.0)) {
    throw DomainError("t-vol requires nu > 2");
  }
  if (family == Family::WeibullDur && !(params.shape > 0.0 && std::isfinite(params.shape))) {
    throw DomainError("weibull-dur requires k > 0");
  }
}

double weibull_beta(double k) { return std::exp(-specfun::log_gamma(1.0 + 1.0 / k)); }

double standardize(Family family, double y, double alpha) {
  return is_volatility(family) ? y * std::exp(-0.5 * alpha) : y * std::exp(-alpha);
}

double destandardize(Family family, double eps, double alpha) {
  return is_volatility(family) ? eps * std::exp(0.5 * alpha) : eps * std::exp(alpha);
}

ObsKernel::ObsKernel(Family family, const ObsParams& params) : family_(family), params_(params) {
  validate_obs_params(family, params);
  if (family == Family::TVol) {
    const double nu = params.shape;
    // log c of the unit-variance t density
    log_norm_ = specfun::log_gamma(0.5) - specfun::log_beta(0.5, 0.5 * nu) -
                0.5 * std::log((nu - 2.0) * std::numbers::pi);
  } else if (family == Family::WeibullDur) {
    weibull_beta_ = weibull_beta(params.shape);
    log_norm_ = std::log(params.shape / weibull_beta_);
  }
}

void ObsKernel::require_valid(double y, double alpha) const {
  if (!std::isfinite(y) || !std::isfinite(alpha)) {
    throw DomainError("observation model: non-finite input");
  }
  if (!is_volatility(family_) && !(y > 0.0)) {
    throw DomainError("duration model: observation must be strictly positive");
  }
}

double ObsKernel::logpdf(double y, double alpha) const {
  require_valid(y, alpha);
  switch (family_) {
    case Family::GaussVol:
      return -kLnSqrt2Pi - 0.5 * y * y * std::exp(-alpha) - 0.5 * alpha;
    case Family::TVol: {
      const double nu = params_.shape;
      const double e2 = y * y * std::exp(-alpha);
      return log_norm_ - 0.5 * alpha - 0.5 * (nu + 1.0) * std::log1p(e2 / (nu - 2.0));
    }
    case Family::ExpDur:
      return -alpha - y * std::exp(-alpha);
    case Family::WeibullDur: {
      const double k = params_.shape;
      const double log_ratio = std::log(y / weibull_beta_) - alpha;  // log(eps / beta)
      return log_norm_ + (k - 1.0) * log_ratio - std::exp(k * log_ratio) - alpha;
    }
  }
  throw UsageError("logpdf: unknown family");
}

double ObsKernel::score(double y, double alpha) const {
  require_valid(y, alpha);
  const double eps = standardize(family_, y, alpha);
  switch (family_) {
    case Family::GaussVol:
      return 0.5 * (eps * eps - 1.0);
    case Family::TVol: {
      const double nu = params_.shape;
      const double e2 = eps * eps;
      return -0.5 + 0.5 * (nu + 1.0) * e2 / ((nu - 2.0) + e2);
    }
    case Family::ExpDur:
      return eps - 1.0;
    case Family::WeibullDur: {
      const double k = params_.shape;
      return k * std::pow(eps / weibull_beta_, k) - k;
    }
  }
  throw UsageError("score: unknown family");
}

TailPair ObsKernel::score_cdf(double eps) const {
  if (!std::isfinite(eps)) throw DomainError("score_cdf: non-finite input");
  switch (family_) {
    case Family::GaussVol: {
      const double x = eps * eps + params_.offset;
      return {specfun::chi1_cdf(x), specfun::chi1_ccdf(x)};
    }
    case Family::TVol: {
      const double nu = params_.shape;
      const double x = nu / (nu - 2.0) * (eps * eps + params_.offset);
      return {specfun::f_1nu_cdf(x, nu), specfun::f_1nu_ccdf(x, nu)};
    }
    case Family::ExpDur:
      if (eps < 0.0) return {0.0, 1.0};
      return {-std::expm1(-eps), std::exp(-eps)};
    case Family::WeibullDur: {
      if (eps < 0.0) return {0.0, 1.0};
      const double h = std::pow(eps / weibull_beta_, params_.shape);
      return {-std::expm1(-h), std::exp(-h)};
    }
  }
  throw UsageError("score_cdf: unknown family");
}

Innovation ObsKernel::innovation(double y, double alpha) const {
  require_valid(y, alpha);
  const TailPair tails = score_cdf(standardize(family_, y, alpha));
  return {tails.lower, specfun::std_normal_quantile(tails)};
}

double ObsKernel::pit(double y, double alpha) const {
  require_valid(y, alpha);
  const double eps = standardize(family_, y, alpha);
  switch (family_) {
    case Family::GaussVol:
      return specfun::std_normal_cdf(eps);
    case Family::TVol: {
      const double nu = params_.shape;
      return specfun::student_t_cdf(eps * std::sqrt(nu / (nu - 2.0)), nu);
    }
    case Family::ExpDur:
      return -std::expm1(-eps);
    case Family::WeibullDur:
      return -std::expm1(-std::pow(eps / weibull_beta_, params_.shape));
  }
  throw UsageError("pit: unknown family");
}

double cond_logpdf(Family family, double y, double alpha, const ObsParams& params) {
  return ObsKernel(family, params).logpdf(y, alpha);
}

double score(Family family, double y, double alpha, const ObsParams& params) {
  return ObsKernel(family, params).score(y, alpha);
}

TailPair score_cdf(Family family, double eps, const ObsParams& params) {
  return ObsKernel(family, params).score_cdf(eps);
}

Innovation innovation(Family family, double y, double alpha, const ObsParams& params) {
  return ObsKernel(family, params).innovation(y, alpha);
}

double pit(Family family, double y, double alpha, const ObsParams& params) {
  return ObsKernel(family, params).pit(y, alpha);
}

}  // namespace igasc
