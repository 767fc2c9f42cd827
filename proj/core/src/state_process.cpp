#include "igasc/state_process.hpp"

#include <cmath>
#include <string>

#include "igasc/errors.hpp"

namespace igasc {
namespace {

constexpr double kRootMargin = 1e-10;

void require_stationary(const ArmaSpec& spec) {
  if (!spec.stationary()) throw StationarityError("ARMA lag polynomial has a root on or inside the unit circle");
  if (spec.psi.empty()) throw UsageError("ARMA spec needs psi[0]");
}

// State-space form s_{t+1} = A s_t + B eta_t (mean removed).
void companion_form(const ArmaSpec& spec, Eigen::MatrixXd& a, Eigen::VectorXd& b) {
  const auto p = static_cast<Eigen::Index>(std::max<std::size_t>(spec.p(), 1));
  const auto q = static_cast<Eigen::Index>(spec.q());
  const Eigen::Index n = p + q;
  a = Eigen::MatrixXd::Zero(n, n);
  b = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(spec.p()); ++i) a(0, i) = spec.phi[i];
  for (Eigen::Index j = 0; j < q; ++j) a(0, p + j) = spec.psi[j + 1];
  for (Eigen::Index i = 1; i < p; ++i) a(i, i - 1) = 1.0;
  if (q > 0) {
    for (Eigen::Index j = 1; j < q; ++j) a(p + j, p + j - 1) = 1.0;
    b(p) = 1.0;
  }
  b(0) = spec.psi[0];
}

}  // namespace

bool ArSpec::stationary() const noexcept {
  return std::isfinite(mu) && std::isfinite(psi) && std::fabs(phi) < 1.0 - kRootMargin && psi >= 0.0;
}

ArmaSpec::ArmaSpec(double mu_, std::vector<double> phi_, std::vector<double> psi_)
    : mu(mu_), phi(std::move(phi_)), psi(std::move(psi_)) {}

ArmaSpec::ArmaSpec(const ArSpec& ar) : mu(ar.mu), phi{ar.phi}, psi{ar.psi} {}

double ArmaSpec::spectral_radius() const {
  if (phi.empty()) return 0.0;
  const auto p = static_cast<Eigen::Index>(phi.size());
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) companion(0, i) = phi[i];
  for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

bool ArmaSpec::stationary() const { return spectral_radius() < 1.0 - kRootMargin; }

double step_ar1(const ArSpec& spec, double alpha, double eta) {
  return spec.mu + spec.phi * alpha + spec.psi * eta;
}

double step_arma(const ArmaSpec& spec, std::span<const double> alpha_hist,
                 std::span<const double> eta_hist) {
  if (alpha_hist.size() != spec.p() || eta_hist.size() != spec.q() + 1) {
    throw UsageError("step_arma: history lengths must be p = " + std::to_string(spec.p()) +
                     " and q + 1 = " + std::to_string(spec.q() + 1));
  }
  double next = spec.mu;
  for (std::size_t i = 0; i < spec.p(); ++i) next += spec.phi[i] * alpha_hist[i];
  for (std::size_t j = 0; j <= spec.q(); ++j) next += spec.psi[j] * eta_hist[j];
  return next;
}

StationaryMoments stationary_moments(const ArSpec& spec) {
  if (!spec.stationary()) throw StationarityError("AR(1) state requires |phi| < 1");
  return {spec.mu / (1.0 - spec.phi), spec.psi * spec.psi / (1.0 - spec.phi * spec.phi)};
}

StationaryMoments stationary_moments(const ArmaSpec& spec) {
  require_stationary(spec);
  double phi_one = 1.0;
  for (double c : spec.phi) phi_one -= c;
  StationaryMoments out;
  out.mu_alpha = spec.mu / phi_one;

  // MA(infinity) weights of alpha_{t+1} on eta_t, eta_{t-1}, ...
  const std::size_t p = spec.p();
  const std::size_t q = spec.q();
  std::vector<double> w;
  w.reserve(1024);
  double var = 0.0;
  std::size_t quiet = 0;
  for (std::size_t k = 0; k < 10'000'000; ++k) {
    double wk = k <= q ? spec.psi[k] : 0.0;
    for (std::size_t i = 1; i <= std::min(k, p); ++i) wk += spec.phi[i - 1] * w[k - i];
    w.push_back(wk);
    var += wk * wk;
    // Stop once a full window of max(p, 1) consecutive weights is negligible.
    quiet = (wk * wk < 1e-14 && k > q) ? quiet + 1 : 0;
    if (quiet >= std::max<std::size_t>(p, 1)) break;
  }
  out.sigma2_alpha = var;
  return out;
}

StationaryStateLaw stationary_state_law(const ArmaSpec& spec) {
  require_stationary(spec);
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  companion_form(spec, a, b);
  // Doubling: P = sum_k A^k B B' A'^k.
  Eigen::MatrixXd cov = b * b.transpose();
  Eigen::MatrixXd power = a;
  for (int it = 0; it < 200; ++it) {
    const Eigen::MatrixXd increment = power * cov * power.transpose();
    cov += increment;
    power = power * power;
    if (increment.cwiseAbs().maxCoeff() < 1e-16 * (1.0 + cov.cwiseAbs().maxCoeff())) break;
  }
  StationaryStateLaw law;
  law.mean = Eigen::VectorXd::Zero(a.rows());
  const double mu_alpha = stationary_moments(spec).mu_alpha;
  const auto p = static_cast<Eigen::Index>(std::max<std::size_t>(spec.p(), 1));
  law.mean.head(p).setConstant(mu_alpha);
  law.covariance = cov;
  return law;
}

StateForecast forecast_state(const ArSpec& spec, double alpha_next, int horizon) {
  if (horizon < 1) throw UsageError("forecast_state: horizon must be >= 1");
  const auto m = stationary_moments(spec);
  const double decay = std::pow(spec.phi, horizon - 1);
  StateForecast f;
  f.horizon = horizon;
  f.mean = decay * alpha_next + (1.0 - decay) * m.mu_alpha;
  f.variance = (1.0 - decay * decay) * m.sigma2_alpha;
  return f;
}

}  // namespace igasc
