#include "igasc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "igasc/errors.hpp"
#include "igasc/recursion.hpp"
#include "igasc/specfun.hpp"

namespace igasc {
namespace {

double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

double kolmogorov_pvalue(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  constexpr double pi = std::numbers::pi;
  if (lambda < 1.18) {
    // Jacobi theta form of the CDF, fast for small lambda.
    const double c = -pi * pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(c * (2.0 * k - 1.0) * (2.0 * k - 1.0));
      cdf += term;
      if (term < 1e-17 * cdf) break;
    }
    cdf *= std::sqrt(2.0 * pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    p += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-17) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> x, const std::function<double(double)>& cdf) {
  if (x.size() < 2) throw UsageError("ks_test: need at least two observations");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  KsResult r;
  r.statistic_d = d;
  r.n = sorted.size();
  r.p_value = kolmogorov_pvalue(std::sqrt(n) * d);
  return r;
}

KsResult ks_uniform_test(std::span<const double> u) {
  return ks_test(u, [](double v) { return std::clamp(v, 0.0, 1.0); });
}

double dkw_bound(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) throw UsageError("dkw_bound: invalid arguments");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

std::vector<double> sample_acf(std::span<const double> x, int max_lag) {
  if (x.size() < 2 || max_lag < 0) throw UsageError("sample_acf: invalid arguments");
  const double m = mean_of(x);
  double c0 = 0.0;
  for (double v : x) c0 += (v - m) * (v - m);
  std::vector<double> acf(static_cast<std::size_t>(max_lag));
  for (int k = 1; k <= max_lag; ++k) {
    double c = 0.0;
    for (std::size_t t = static_cast<std::size_t>(k); t < x.size(); ++t) c += (x[t] - m) * (x[t - k] - m);
    acf[k - 1] = c / c0;
  }
  return acf;
}

double sample_kurtosis(std::span<const double> x) {
  if (x.size() < 2) throw UsageError("sample_kurtosis: need at least two observations");
  const double m = mean_of(x);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d2 = (v - m) * (v - m);
    m2 += d2;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(x.size());
  m2 /= n;
  m4 /= n;
  return m4 / (m2 * m2);
}

PortmanteauResult ljung_box(std::span<const double> x, int lags) {
  if (lags < 1 || x.size() <= static_cast<std::size_t>(lags)) throw UsageError("ljung_box: invalid lags");
  const auto acf = sample_acf(x, lags);
  const double n = static_cast<double>(x.size());
  double q = 0.0;
  for (int k = 1; k <= lags; ++k) q += acf[k - 1] * acf[k - 1] / (n - k);
  q *= n * (n + 2.0);
  return {q, specfun::chi2_ccdf(q, lags), lags};
}

PortmanteauResult jarque_bera(std::span<const double> x) {
  if (x.size() < 3) throw UsageError("jarque_bera: need at least three observations");
  const double m = mean_of(x);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(x.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  const double jb = n / 6.0 * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
  return {jb, specfun::chi2_ccdf(jb, 2.0), 2};
}

std::vector<double> theoretical_acf_logy2(Family family, const Theta& theta, int max_lag, bool exact_constant) {
  if (family != Family::GaussVol) throw UsageError("theoretical_acf_logy2: Gaussian volatility family only");
  if (max_lag < 0) throw UsageError("theoretical_acf_logy2: max_lag must be >= 0");
  const double s2 = stationary_moments(theta.ar()).sigma2_alpha;
  const double c = exact_constant ? std::numbers::pi * std::numbers::pi / 2.0 : kLogChiSqVariance;
  std::vector<double> acf(static_cast<std::size_t>(max_lag));
  double power = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    power *= theta.phi;
    acf[k - 1] = power * s2 / (s2 + c);
  }
  return acf;
}

std::vector<double> feedback_acf_logy2(Family family, const Theta& theta, int max_lag, bool exact_constant) {
  if (family != Family::GaussVol) throw UsageError("feedback_acf_logy2: Gaussian volatility family only");
  if (max_lag < 0) throw UsageError("feedback_acf_logy2: max_lag must be >= 0");
  const double s2 = stationary_moments(theta.ar()).sigma2_alpha;
  const double c = exact_constant ? std::numbers::pi * std::numbers::pi / 2.0 : kLogChiSqVariance;
  // cov(log y^2_{t+k}, log y^2_t) = phi^k s2 + phi^(k-1) psi E[eta log eps^2]
  std::vector<double> acf(static_cast<std::size_t>(max_lag));
  double power = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    acf[k - 1] = (power * theta.phi * s2 + power * theta.psi * kEtaLogChiSqCovariance) / (s2 + c);
    power *= theta.phi;
  }
  return acf;
}

double theoretical_kurtosis(Family family, const Theta& theta) {
  if (family != Family::GaussVol) throw UsageError("theoretical_kurtosis: Gaussian volatility family only");
  return 3.0 * std::exp(stationary_moments(theta.ar()).sigma2_alpha);
}

std::vector<double> pit_series(Family family, std::span<const double> data, const Theta& theta) {
  const FilterOutput out = filter(family, data, theta);
  const ObsKernel kernel(family, theta.obs());
  std::vector<double> u(data.size());
  for (std::size_t t = 0; t < data.size(); ++t) u[t] = kernel.pit(data[t], out.alpha[t]);
  return u;
}

}  // namespace igasc
