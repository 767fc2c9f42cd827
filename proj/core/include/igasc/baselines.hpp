#pragma once

#include <optional>
#include <span>
#include <vector>

#include "igasc/estimation.hpp"

namespace igasc {

enum class GarchConditional { Gaussian, StudentT };

/// GARCH(1,1): sigma2_{t+1} = omega + alpha y_t^2 + beta sigma2_t.
/// `nu` is used only with the Student-t conditional (unit variance, nu > 2).
struct GarchTheta {
  double omega = 0.05;
  double alpha = 0.1;
  double beta = 0.85;
  double nu = 8.0;
};

/// Throws DomainError unless omega > 0, alpha, beta >= 0, alpha + beta < 1,
/// and nu > 2 for the t conditional.
void validate(GarchConditional cond, const GarchTheta& theta);

struct GarchFilterOutput {
  std::vector<double> sigma2;
  std::vector<double> per_obs_loglik;
  double loglik = 0.0;
};

/// Starts at the unconditional variance omega / (1 - alpha - beta).
GarchFilterOutput garch_filter(GarchConditional cond, std::span<const double> data, const GarchTheta& theta);

/// Conditional CDF residuals along the filtered variance path.
std::vector<double> garch_pit(GarchConditional cond, std::span<const double> data, const GarchTheta& theta);

std::vector<std::string> garch_param_names(GarchConditional cond);
std::vector<double> garch_natural_params(GarchConditional cond, const GarchTheta& theta);

// z = (log omega, logit(alpha + beta), logit(alpha / (alpha + beta)), [log(nu - 2.001)])
std::vector<double> garch_to_unconstrained(GarchConditional cond, const GarchTheta& theta);
GarchTheta garch_from_unconstrained(GarchConditional cond, std::span<const double> z);

FitResult<GarchTheta> garch_fit(GarchConditional cond, std::span<const double> data,
                                const std::optional<GarchTheta>& init = std::nullopt,
                                const OptimOptions& options = {});

}  // namespace igasc
