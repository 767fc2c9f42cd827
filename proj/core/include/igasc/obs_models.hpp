#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "igasc/specfun.hpp"
#include "igasc/state_process.hpp"

namespace igasc {

enum class Family { GaussVol, TVol, ExpDur, WeibullDur };

inline constexpr double kDefaultOffset = 1e-4;

std::string_view family_name(Family f);
/// Accepts the CLI spellings gauss-vol, t-vol, exp-dur, weibull-dur.
std::optional<Family> parse_family(std::string_view name);

bool is_volatility(Family f) noexcept;
bool has_shape(Family f) noexcept;

/// Family-specific parameters of the observation density.
/// `shape` is nu (t-vol, nu > 2) or k (weibull-dur, k > 0); ignored otherwise.
/// `offset` is added to eps^2 inside the volatility innovation map only.
struct ObsParams {
  double shape = 0.0;
  double offset = kDefaultOffset;
};

/// Univariate model parameters with AR(1) state dynamics.
struct Theta {
  double mu = 0.0;
  double phi = 0.0;
  double psi = 1.0;
  double shape = 0.0;
  double offset = kDefaultOffset;

  ArSpec ar() const noexcept { return {mu, phi, psi}; }
  ObsParams obs() const noexcept { return {shape, offset}; }
};

/// Univariate model parameters with ARMA(p, q) state dynamics.
struct ArmaTheta {
  ArmaSpec state;
  ObsParams obs;
};

/// Throws DomainError if the shape parameter is invalid for the family.
void validate_obs_params(Family family, const ObsParams& params);

/// Standardized observation: y e^{-alpha/2} (volatility) or y e^{-alpha} (duration).
double standardize(Family family, double y, double alpha);
/// Inverse of `standardize`.
double destandardize(Family family, double eps, double alpha);

double cond_logpdf(Family family, double y, double alpha, const ObsParams& params);
/// d/d alpha of cond_logpdf.
double score(Family family, double y, double alpha, const ObsParams& params);

struct Innovation {
  double u;    ///< score CDF F_g evaluated at the realized score
  double eta;  ///< Phi^{-1}(u), computed from the more accurate tail
};
Innovation innovation(Family family, double y, double alpha, const ObsParams& params);

/// Score CDF as a function of the standardized observation, both tails.
specfun::TailPair score_cdf(Family family, double eps, const ObsParams& params);

/// Conditional CDF of y given alpha (the PIT residual).
double pit(Family family, double y, double alpha, const ObsParams& params);

/// Scale constant of the mean-one Weibull: 1 / Gamma(1 + 1/k).
double weibull_beta(double k);

/// A family with its parameters validated and normalizing constants cached.
/// The free functions above build one per call; recursions build one per
/// likelihood evaluation.
class ObsKernel {
 public:
  ObsKernel(Family family, const ObsParams& params);

  Family family() const noexcept { return family_; }
  const ObsParams& params() const noexcept { return params_; }

  double logpdf(double y, double alpha) const;
  double score(double y, double alpha) const;
  Innovation innovation(double y, double alpha) const;
  specfun::TailPair score_cdf(double eps) const;
  double pit(double y, double alpha) const;

 private:
  void require_valid(double y, double alpha) const;

  Family family_;
  ObsParams params_;
  double log_norm_ = 0.0;    // t: log c; weibull: log(k / beta)
  double weibull_beta_ = 1.0;
};

}  // namespace igasc
