#include "igasc/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "igasc/errors.hpp"
#include "igasc/parallel.hpp"
#include "igasc/recursion.hpp"

namespace igasc {
namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double draw_standardized(Family family, const ObsParams& params, Rng& rng) {
  switch (family) {
    case Family::GaussVol:
      return rng.normal();
    case Family::TVol: {
      const double nu = params.shape;
      return rng.student_t(nu) * std::sqrt((nu - 2.0) / nu);
    }
    case Family::ExpDur:
      return rng.exponential();
    case Family::WeibullDur: {
      const double k = params.shape;
      return weibull_beta(k) * std::pow(rng.exponential(), 1.0 / k);
    }
  }
  throw UsageError("draw_standardized: unknown family");
}

SimPath simulate(const SimConfig& config) {
  if (config.length < 1) throw UsageError("simulate: length must be >= 1");
  const ArSpec spec = config.theta.ar();
  const StationaryMoments m = stationary_moments(spec);
  const ObsKernel kernel(config.family, config.theta.obs());
  Rng rng(config.seed, config.stream, config.substream);

  SimPath path;
  path.y.reserve(config.length);
  path.alpha.reserve(config.length);
  path.eta.reserve(config.length);
  path.u.reserve(config.length);
  double alpha = m.mu_alpha + std::sqrt(m.sigma2_alpha) * rng.normal();
  const std::size_t total = config.burn_in + config.length;
  for (std::size_t t = 0; t < total; ++t) {
    const double eps = draw_standardized(config.family, kernel.params(), rng);
    const double y = destandardize(config.family, eps, alpha);
    const Innovation inn = kernel.innovation(y, alpha);
    if (t >= config.burn_in) {
      path.y.push_back(y);
      path.alpha.push_back(alpha);
      path.eta.push_back(inn.eta);
      path.u.push_back(inn.u);
    }
    alpha = step_ar1(spec, alpha, inn.eta);
  }
  path.alpha_next = alpha;
  return path;
}

SimPath simulate_arma(Family family, const ArmaTheta& theta, std::size_t length, std::uint64_t seed,
                      std::size_t burn_in) {
  if (length < 1) throw UsageError("simulate_arma: length must be >= 1");
  const ArmaSpec& spec = theta.state;
  const StationaryStateLaw law = stationary_state_law(spec);
  const ObsKernel kernel(family, theta.obs);
  Rng rng(seed);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(law.covariance);
  const Eigen::MatrixXd root = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  Eigen::VectorXd z(law.mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  const Eigen::VectorXd s = law.mean + root * z;

  const std::size_t p = spec.p();
  const std::size_t q = spec.q();
  const auto p_slots = static_cast<Eigen::Index>(std::max<std::size_t>(p, 1));
  std::vector<double> alpha_hist(p);
  for (std::size_t i = 0; i < p; ++i) alpha_hist[i] = s(static_cast<Eigen::Index>(i));
  std::vector<double> eta_hist(q + 1, 0.0);
  for (std::size_t j = 0; j < q; ++j) eta_hist[j + 1] = s(p_slots + static_cast<Eigen::Index>(j));
  double alpha = s(0);

  SimPath path;
  const std::size_t total = burn_in + length;
  for (std::size_t t = 0; t < total; ++t) {
    const double eps = draw_standardized(family, kernel.params(), rng);
    const double y = destandardize(family, eps, alpha);
    const Innovation inn = kernel.innovation(y, alpha);
    if (t >= burn_in) {
      path.y.push_back(y);
      path.alpha.push_back(alpha);
      path.eta.push_back(inn.eta);
      path.u.push_back(inn.u);
    }
    eta_hist[0] = inn.eta;
    if (p > 0) alpha_hist[0] = alpha;
    const double next = step_arma(spec, alpha_hist, eta_hist);
    if (p > 1) std::rotate(alpha_hist.rbegin(), alpha_hist.rbegin() + 1, alpha_hist.rend());
    if (q > 0) std::rotate(eta_hist.rbegin(), eta_hist.rbegin() + 1, eta_hist.rend());
    alpha = next;
    if (p > 0) alpha_hist[0] = alpha;
  }
  path.alpha_next = alpha;
  return path;
}

MvSimPath simulate_mv(const MvSimConfig& config) {
  validate(config.theta);
  if (config.length < 1) throw UsageError("simulate_mv: length must be >= 1");
  const MvTheta& theta = config.theta;
  const Eigen::Index dim = theta.dim();
  const ObsKernel kernel(Family::GaussVol, ObsParams{0.0, theta.offset});
  const Eigen::MatrixXd& chol = theta.corr.cholesky();
  Rng rng(config.seed, config.stream);

  Eigen::VectorXd alpha(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const StationaryMoments m = stationary_moments(theta.series[i]);
    alpha(i) = m.mu_alpha + std::sqrt(m.sigma2_alpha) * rng.normal();
  }
  const auto n = static_cast<Eigen::Index>(config.length);
  MvSimPath path{Eigen::MatrixXd(n, dim), Eigen::MatrixXd(n, dim), Eigen::MatrixXd(n, dim), Eigen::VectorXd()};
  Eigen::VectorXd z(dim);
  const auto total = static_cast<Eigen::Index>(config.burn_in) + n;
  for (Eigen::Index t = 0; t < total; ++t) {
    for (Eigen::Index i = 0; i < dim; ++i) z(i) = rng.normal();
    const Eigen::VectorXd eps = chol * z;
    const Eigen::Index row = t - static_cast<Eigen::Index>(config.burn_in);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double y = eps(i) * std::exp(0.5 * alpha(i));
      const double eta = kernel.innovation(y, alpha(i)).eta;
      if (row >= 0) {
        path.y(row, i) = y;
        path.alpha(row, i) = alpha(i);
        path.eta(row, i) = eta;
      }
      alpha(i) = step_ar1(theta.series[i], alpha(i), eta);
    }
  }
  path.alpha_next = alpha;
  return path;
}

McStudyResult mc_study(const McStudyConfig& config) {
  if (config.replications < 2) throw UsageError("mc_study: replications must be >= 2");
  if (config.lengths.empty()) throw UsageError("mc_study: no series lengths given");
  const std::vector<double> truth = natural_params(config.family, config.true_theta);
  const std::vector<std::string> names = param_names(config.family);
  const auto reps = static_cast<std::size_t>(config.replications);

  McStudyResult result;
  result.family = config.family;
  result.replications = config.replications;
  for (std::size_t length : config.lengths) {
    McBlock block;
    block.length = length;
    block.estimates.assign(reps, {});
    parallel_for(
        reps,
        [&](std::size_t r) {
          SimConfig sim;
          sim.family = config.family;
          sim.theta = config.true_theta;
          sim.length = length;
          sim.seed = config.seed;
          sim.stream = length;
          sim.substream = r;
          const SimPath path = simulate(sim);
          FitOptions fit_options = config.fit;
          fit_options.offset = config.true_theta.offset;
          const FitResult<Theta> fit = igasc::fit(config.family, path.y, std::nullopt, fit_options);
          if (fit.converged) block.estimates[r] = natural_params(config.family, fit.theta_hat);
        },
        config.threads);

    for (const auto& row : block.estimates) block.n_converged += row.empty() ? 0 : 1;
    if (block.n_converged == 0) {
      throw StudyError("mc_study: no replication converged at T = " + std::to_string(length));
    }
    const double count = block.n_converged;
    for (std::size_t k = 0; k < truth.size(); ++k) {
      CompensatedSum sum;
      for (const auto& row : block.estimates) {
        if (!row.empty()) sum.add(row[k]);
      }
      const double mean = sum.value() / count;
      CompensatedSum sq;
      for (const auto& row : block.estimates) {
        if (!row.empty()) sq.add((row[k] - mean) * (row[k] - mean));
      }
      McParamStats s;
      s.name = names[k];
      s.true_value = truth[k];
      s.mean = mean;
      s.variance = sq.value() / count;
      s.bias = mean - truth[k];
      s.mse = s.variance + s.bias * s.bias;
      block.stats.push_back(s);
    }
    result.blocks.push_back(std::move(block));
  }
  return result;
}

void write_mc_csv(std::ostream& os, const McStudyResult& result) {
  const auto old_precision = os.precision(17);
  os << "family,T,parameter,true,mean,variance,bias,mse,n_converged\n";
  for (const auto& block : result.blocks) {
    for (const auto& s : block.stats) {
      os << family_name(result.family) << ',' << block.length << ',' << s.name << ',' << s.true_value << ','
         << s.mean << ',' << s.variance << ',' << s.bias << ',' << s.mse << ',' << block.n_converged << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace igasc
