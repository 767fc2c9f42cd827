#include "igasc/estimation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "igasc/errors.hpp"
#include "igasc/recursion.hpp"

namespace igasc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLogChi2Mean = -1.27;

double checked_atanh(double phi) {
  if (!(std::fabs(phi) < 1.0)) throw DomainError("phi must satisfy |phi| < 1");
  return std::atanh(phi);
}

double checked_log(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
  return std::log(v);
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

std::vector<std::string> param_names(Family family) {
  std::vector<std::string> names{"mu", "phi", "psi"};
  if (family == Family::TVol) names.emplace_back("nu");
  if (family == Family::WeibullDur) names.emplace_back("k");
  return names;
}

std::vector<double> to_unconstrained(Family family, const Theta& theta) {
  std::vector<double> z{theta.mu, checked_atanh(theta.phi), checked_log(theta.psi, "psi")};
  if (family == Family::TVol) z.push_back(checked_log(theta.shape - kNuFloor, "nu - 2.001"));
  if (family == Family::WeibullDur) z.push_back(checked_log(theta.shape, "k"));
  return z;
}

Theta from_unconstrained(Family family, std::span<const double> z, double offset) {
  const std::size_t expected = has_shape(family) ? 4 : 3;
  if (z.size() != expected) throw UsageError("from_unconstrained: wrong parameter count");
  Theta t;
  t.mu = z[0];
  t.phi = std::tanh(z[1]);
  t.psi = std::exp(z[2]);
  t.offset = offset;
  if (family == Family::TVol) t.shape = kNuFloor + std::exp(z[3]);
  if (family == Family::WeibullDur) t.shape = std::exp(z[3]);
  return t;
}

std::vector<double> natural_params(Family family, const Theta& theta) {
  std::vector<double> v{theta.mu, theta.phi, theta.psi};
  if (has_shape(family)) v.push_back(theta.shape);
  return v;
}

std::vector<std::string> mv_param_names(int dim) {
  std::vector<std::string> names;
  for (int i = 1; i <= dim; ++i) {
    for (const char* p : {"mu_", "phi_", "psi_"}) names.push_back(p + std::to_string(i));
  }
  for (int i = 1; i < dim; ++i) {
    for (int j = 0; j < i; ++j) names.push_back("rho_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  }
  return names;
}

std::vector<double> mv_to_unconstrained(const MvTheta& theta) {
  std::vector<double> z;
  for (const auto& s : theta.series) {
    z.push_back(s.mu);
    z.push_back(checked_atanh(s.phi));
    z.push_back(checked_log(s.psi, "psi"));
  }
  for (double a : angles_from_corr(theta.corr)) {
    const double frac = a / std::numbers::pi;
    if (!(frac > 0.0 && frac < 1.0)) throw DomainError("correlation angle on the boundary");
    z.push_back(std::log(frac / (1.0 - frac)));
  }
  return z;
}

MvTheta mv_from_unconstrained(std::span<const double> z, int dim, double offset) {
  const auto n_series = static_cast<std::size_t>(3 * dim);
  if (z.size() != n_series + static_cast<std::size_t>(corr_param_count(dim))) {
    throw UsageError("mv_from_unconstrained: wrong parameter count");
  }
  MvTheta t;
  t.offset = offset;
  for (int i = 0; i < dim; ++i) {
    t.series.push_back({z[3 * i], std::tanh(z[3 * i + 1]), std::exp(z[3 * i + 2])});
  }
  std::vector<double> angles;
  for (std::size_t k = n_series; k < z.size(); ++k) angles.push_back(std::numbers::pi * logistic(z[k]));
  t.corr = corr_from_angles(angles, dim);
  return t;
}

std::vector<double> mv_natural_params(const MvTheta& theta) {
  std::vector<double> v;
  for (const auto& s : theta.series) {
    v.push_back(s.mu);
    v.push_back(s.phi);
    v.push_back(s.psi);
  }
  for (int i = 1; i < theta.dim(); ++i) {
    for (int j = 0; j < i; ++j) v.push_back(theta.corr(i, j));
  }
  return v;
}

Theta initial_values(Family family, std::span<const double> data, double offset) {
  if (data.empty()) throw UsageError("initial_values: empty data");
  Theta t;
  t.phi = 0.9;
  t.psi = 0.1;
  t.offset = offset;
  double mu_alpha = 0.0;
  if (is_volatility(family)) {
    double acc = 0.0;
    for (double y : data) acc += std::log(y * y + offset);
    mu_alpha = acc / static_cast<double>(data.size()) - kLogChi2Mean;
    if (family == Family::TVol) t.shape = 8.0;
  } else {
    double acc = 0.0;
    for (double y : data) {
      if (!(y > 0.0)) throw DomainError("initial_values: durations must be positive");
      acc += y;
    }
    mu_alpha = std::log(acc / static_cast<double>(data.size()));
    if (family == Family::WeibullDur) t.shape = 1.0;
  }
  t.mu = mu_alpha * (1.0 - t.phi);
  return t;
}

MvTheta mv_initial_values(const Eigen::MatrixXd& data, double offset) {
  const auto n = data.rows();
  const auto dim = data.cols();
  if (n < 2 || dim < 1) throw UsageError("mv_initial_values: need at least two observations");
  MvTheta t;
  t.offset = offset;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Eigen::VectorXd col = data.col(i);
    t.series.push_back(initial_values(Family::GaussVol, std::span<const double>(col.data(), col.size()), offset).ar());
  }
  const Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
  Eigen::MatrixXd corr = cov.array() / (sd * sd.transpose()).array();
  corr.diagonal().setOnes();
  try {
    t.corr = CorrMatrix(corr);
  } catch (const DomainError&) {
    t.corr = CorrMatrix::identity(static_cast<int>(dim));
  }
  return t;
}

bool fill_standard_errors(const Objective& neg_loglik, std::span<const double> z_hat,
                          const std::function<std::vector<double>(std::span<const double>)>& natural,
                          const std::vector<std::string>& names, std::vector<ParamEstimate>& out) {
  const std::vector<double> est = natural(z_hat);
  out.clear();
  for (std::size_t i = 0; i < est.size(); ++i) out.push_back({names.at(i), est[i], kNaN, kNaN, kNaN});
  const Eigen::MatrixXd hess = fd_hessian(neg_loglik, z_hat);
  const auto cov_z = spd_inverse(hess);
  if (!cov_z) return false;
  const Eigen::MatrixXd cov = delta_method(natural, z_hat, *cov_z);
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double var = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    const double se = var >= 0.0 ? std::sqrt(var) : kNaN;
    out[i].std_error = se;
    out[i].ci_lo = est[i] - 1.96 * se;
    out[i].ci_hi = est[i] + 1.96 * se;
  }
  return true;
}

FitResult<Theta> fit(Family family, std::span<const double> data, const std::optional<Theta>& init,
                     const FitOptions& options) {
  if (data.empty()) throw UsageError("fit: empty data");
  Theta start = init.value_or(initial_values(family, data, options.offset));
  start.offset = options.offset;
  const std::vector<double> z0 = to_unconstrained(family, start);
  const double offset = options.offset;
  const Objective neg_loglik = [&](std::span<const double> z) {
    return -filter(family, data, from_unconstrained(family, z, offset)).loglik;
  };
  const OptimResult opt = minimize(neg_loglik, z0, options.optim);

  FitResult<Theta> res;
  res.theta_hat = from_unconstrained(family, opt.x, offset);
  res.loglik = filter(family, data, res.theta_hat).loglik;
  res.converged = opt.converged;
  res.iterations = opt.iterations;
  res.eval_count = opt.evals;
  res.short_sample = data.size() < kMinFitLength;
  const auto natural = [&](std::span<const double> z) {
    return natural_params(family, from_unconstrained(family, z, offset));
  };
  res.std_errors_defined = fill_standard_errors(neg_loglik, opt.x, natural, param_names(family), res.params);
  return res;
}

FitResult<MvTheta> fit_mv(const Eigen::MatrixXd& data, const std::optional<MvTheta>& init,
                          const FitOptions& options) {
  const int dim = static_cast<int>(data.cols());
  if (dim < 2) throw UsageError("fit_mv: need at least two series");
  MvTheta start = init.value_or(mv_initial_values(data, options.offset));
  start.offset = options.offset;
  const std::vector<double> z0 = mv_to_unconstrained(start);
  const double offset = options.offset;
  const Objective neg_loglik = [&](std::span<const double> z) {
    return -filter_mv(data, mv_from_unconstrained(z, dim, offset)).loglik;
  };
  const OptimResult opt = minimize(neg_loglik, z0, options.optim);

  FitResult<MvTheta> res;
  res.theta_hat = mv_from_unconstrained(opt.x, dim, offset);
  res.loglik = filter_mv(data, res.theta_hat).loglik;
  res.converged = opt.converged;
  res.iterations = opt.iterations;
  res.eval_count = opt.evals;
  res.short_sample = static_cast<std::size_t>(data.rows()) < kMinFitLength;
  const auto natural = [&](std::span<const double> z) {
    return mv_natural_params(mv_from_unconstrained(z, dim, offset));
  };
  res.std_errors_defined = fill_standard_errors(neg_loglik, opt.x, natural, mv_param_names(dim), res.params);
  return res;
}

}  // namespace igasc
