#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <gtest/gtest.h>
#include <numbers>

#include "igasc/diagnostics.hpp"
#include "igasc/errors.hpp"
#include "igasc/estimation.hpp"
#include "igasc/recursion.hpp"
#include "igasc/rng.hpp"
#include "igasc/simulation.hpp"
#include "igasc/specfun.hpp"

using namespace igasc;
namespace bm = boost::math;

namespace {

// Independent long-double evaluation of P(K > lambda).
double kolmogorov_oracle(double lambda) {
  const long double l = lambda;
  if (l < 1.0L) {
    const long double pi = std::numbers::pi_v<long double>;
    long double s = 0.0L;
    for (int k = 1; k <= 60; ++k) {
      const long double a = (2 * k - 1) * pi;
      s += std::exp(-a * a / (8.0L * l * l));
    }
    return static_cast<double>(1.0L - std::sqrt(2.0L * pi) / l * s);
  }
  long double s = 0.0L;
  for (int k = 1; k <= 200; ++k) s += (k % 2 ? 1.0L : -1.0L) * std::exp(-2.0L * k * k * l * l);
  return static_cast<double>(2.0L * s);
}

std::vector<double> uniforms(Rng& rng, std::size_t n) {
  std::vector<double> u(n);
  for (double& v : u) v = rng.uniform();
  return u;
}

}  // namespace

TEST(Kolmogorov, MatchesOracle) {
  for (double l = 0.2; l < 3.5; l += 0.01) {
    EXPECT_NEAR(kolmogorov_pvalue(l), kolmogorov_oracle(l), 1e-13) << l;
  }
  EXPECT_EQ(kolmogorov_pvalue(0.0), 1.0);
  EXPECT_NEAR(kolmogorov_pvalue(1.3580986), 0.05, 1e-7);
}

TEST(Kolmogorov, KnownStatisticPairs) {
  // (D, n, reported p) with p given to four significant figures.
  struct Row {
    double d;
    double n;
    double p;
  };
  for (Row r : {Row{0.047565, 2476, 2.725e-05}, Row{0.049637, 2476, 1.005e-05}, Row{0.026795, 2476, 0.05714},
                Row{0.030647, 2476, 0.0191}, Row{0.036716, 520, 0.4849}, Row{0.038501, 520, 0.4239},
                Row{0.041502, 520, 0.3319}, Row{0.040686, 520, 0.3555}}) {
    EXPECT_NEAR(kolmogorov_pvalue(std::sqrt(r.n) * r.d), r.p, 6e-4 * r.p) << r.d;
  }
}

TEST(KsUniform, ExactStatistic) {
  const std::size_t n = 40;
  std::vector<double> mid(n), half(n, 0.5);
  for (std::size_t i = 0; i < n; ++i) mid[i] = (2.0 * i + 1.0) / (2.0 * n);
  std::reverse(mid.begin(), mid.end());
  EXPECT_NEAR(ks_uniform_test(mid).statistic_d, 1.0 / (2.0 * n), 1e-15);
  EXPECT_NEAR(ks_uniform_test(half).statistic_d, 0.5, 1e-15);
  EXPECT_EQ(ks_uniform_test(half).n, n);
  EXPECT_THROW(ks_uniform_test(std::vector<double>{}), UsageError);
}

TEST(KsUniform, PValueDecreasesInD) {
  std::vector<double> u(500);
  double last = 1.1;
  for (double shift : {0.0, 0.01, 0.02, 0.04, 0.08}) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::min(1.0, (i + 0.5) / u.size() + shift);
    const auto r = ks_uniform_test(u);
    EXPECT_LT(r.p_value, last);
    last = r.p_value;
  }
}

TEST(KsUniform, CalibrationAndPower) {
  int accepted = 0, rejected_beta = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(s, 77);
    if (ks_uniform_test(uniforms(rng, 10000)).p_value > 0.01) ++accepted;
    // Median of three uniforms is Beta(2, 2).
    std::vector<double> b(10000);
    for (double& v : b) {
      double x[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
      std::sort(x, x + 3);
      v = x[1];
    }
    if (ks_uniform_test(b).p_value < 0.01) ++rejected_beta;
  }
  EXPECT_GE(accepted, 98);
  EXPECT_GE(rejected_beta, 99);
}

TEST(KsTest, AgainstCustomCdf) {
  Rng rng(4);
  std::vector<double> z(5000);
  for (double& v : z) v = rng.normal();
  const bm::normal_distribution<double> nd;
  const auto a = ks_test(z, [&](double x) { return bm::cdf(nd, x); });
  std::vector<double> u(z.size());
  std::transform(z.begin(), z.end(), u.begin(), [&](double x) { return bm::cdf(nd, x); });
  const auto b = ks_uniform_test(u);
  EXPECT_NEAR(a.statistic_d, b.statistic_d, 1e-15);
  EXPECT_NEAR(a.p_value, b.p_value, 1e-13);
}

TEST(Dkw, Formula) { EXPECT_NEAR(dkw_bound(1000000, 0.001), std::sqrt(std::log(2.0 / 0.001) / 2e6), 1e-15); }

TEST(Acf, SampleMatchesDirectFormula) {
  Rng rng(12);
  std::vector<double> x(1000);
  double prev = 0.0;
  for (double& v : x) v = prev = 0.6 * prev + rng.normal();
  const auto acf = sample_acf(x, 3);
  ASSERT_EQ(acf.size(), 3u);
  double m = 0.0;
  for (double v : x) m += v;
  m /= x.size();
  double c0 = 0.0, c2 = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) c0 += (x[t] - m) * (x[t] - m);
  for (std::size_t t = 2; t < x.size(); ++t) c2 += (x[t] - m) * (x[t - 2] - m);
  EXPECT_NEAR(acf[1], c2 / c0, 1e-12);
}

TEST(Acf, Theoretical) {
  const Theta th{0.3, 0.2, 0.7};
  const auto acf = theoretical_acf_logy2(Family::GaussVol, th, 5);
  EXPECT_NEAR(acf[0], 0.2 * 0.5104166666666666 / 5.4404166666666666, 1e-15);
  EXPECT_NEAR(acf[0], 0.018766, 5e-6);  // quoted value is rounded
  EXPECT_NEAR(acf[2], 0.04 * acf[0], 1e-15);
  const auto exact = theoretical_acf_logy2(Family::GaussVol, th, 1, true);
  EXPECT_NEAR(exact[0], 0.2 * 0.5104166666666666 / (0.5104166666666666 + std::numbers::pi * std::numbers::pi / 2), 1e-15);
  for (double v : theoretical_acf_logy2(Family::GaussVol, Theta{0.3, 0.0, 0.7}, 4)) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(theoretical_acf_logy2(Family::TVol, Theta{0.3, 0.2, 0.7, 10.0}, 3), UsageError);
  EXPECT_THROW(theoretical_acf_logy2(Family::GaussVol, Theta{0.3, 1.0, 0.7}, 3), StationarityError);
}

TEST(Acf, LogChiSquareConstant) {
  // Var log(Z^2) = trigamma(1/2).
  EXPECT_NEAR(kLogChiSqVariance, bm::trigamma(0.5), 0.01);
}

TEST(Acf, FeedbackConstantByQuadrature) {
  // E[eta log Z^2] with eta = Phi^{-1}(P(|Z| <= |z|)), integrated over log|z|.
  const bm::normal_distribution<double> nd;
  auto f = [&](double v) {
    const double z = std::exp(v);
    const double lo = std::erf(z / std::sqrt(2.0)), hi = std::erfc(z / std::sqrt(2.0));
    if (lo <= 0.0 || hi <= 0.0) return 0.0;
    const double eta = lo < 0.5 ? bm::quantile(nd, lo) : bm::quantile(bm::complement(nd, hi));
    return 2.0 * eta * 2.0 * v * bm::pdf(nd, z) * z;
  };
  using gk = bm::quadrature::gauss_kronrod<double, 61>;
  const double c = gk::integrate(f, -80.0, 0.0, 15, 1e-13) + gk::integrate(f, 0.0, std::log(40.0), 15, 1e-13);
  EXPECT_NEAR(kEtaLogChiSqCovariance, c, 1e-10);
}

TEST(Acf, FeedbackFormulaMatchesSimulation) {
  const Theta th{0.3, 0.2, 0.7, 0.0, 0.0};
  const SimPath p = simulate(SimConfig{Family::GaussVol, th, 400000, 0, 13});
  std::vector<double> l(p.y.size());
  for (std::size_t t = 0; t < l.size(); ++t) l[t] = std::log(p.y[t] * p.y[t]);
  const auto sample = sample_acf(l, 5);
  const auto theory = feedback_acf_logy2(Family::GaussVol, th, 5, true);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(sample[k], theory[k], 0.01) << k + 1;
  // Without feedback (psi = 0 in the covariance term) both formulas agree.
  const Theta flat{0.3, 0.6, 0.0, 0.0, 0.0};
  EXPECT_EQ(feedback_acf_logy2(Family::GaussVol, flat, 3), theoretical_acf_logy2(Family::GaussVol, flat, 3));
}

TEST(Kurtosis, Theoretical) {
  EXPECT_DOUBLE_EQ(theoretical_kurtosis(Family::GaussVol, Theta{0.3, 0.2, 0.0}), 3.0);
  EXPECT_NEAR(theoretical_kurtosis(Family::GaussVol, Theta{0.3, 0.2, 0.7}), 3.0 * std::exp(0.5104166666666666), 1e-12);
  EXPECT_NEAR(theoretical_kurtosis(Family::GaussVol, Theta{0.3, 0.2, 0.7}), 4.998, 5e-4);
  EXPECT_THROW(theoretical_kurtosis(Family::ExpDur, Theta{0.3, 0.2, 0.7}), UsageError);
}

TEST(Kurtosis, SampleOfKnownLaws) {
  Rng rng(5);
  std::vector<double> z(400000);
  for (double& v : z) v = rng.normal();
  EXPECT_NEAR(sample_kurtosis(z), 3.0, 0.05);
  std::vector<double> u(400000);
  for (double& v : u) v = rng.uniform();
  EXPECT_NEAR(sample_kurtosis(u), 1.8, 0.01);
}

TEST(Portmanteau, LjungBoxByHand) {
  Rng rng(8);
  std::vector<double> x(300);
  for (double& v : x) v = rng.normal();
  const auto acf = sample_acf(x, 5);
  double q = 0.0;
  for (int k = 1; k <= 5; ++k) q += acf[k - 1] * acf[k - 1] / (300.0 - k);
  q *= 300.0 * 302.0;
  const auto lb = ljung_box(x, 5);
  EXPECT_NEAR(lb.statistic, q, 1e-10);
  EXPECT_EQ(lb.dof, 5);
  EXPECT_NEAR(lb.p_value, bm::cdf(bm::complement(bm::chi_squared_distribution<double>(5), q)), 1e-12);
}

TEST(Portmanteau, JarqueBeraByHand) {
  Rng rng(9);
  std::vector<double> x(500);
  for (double& v : x) v = rng.exponential();
  double m = 0.0;
  for (double v : x) m += v;
  m /= x.size();
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= x.size();
  m3 /= x.size();
  m4 /= x.size();
  const double s = m3 / std::pow(m2, 1.5), k = m4 / (m2 * m2);
  const double jb = x.size() / 6.0 * (s * s + 0.25 * (k - 3.0) * (k - 3.0));
  const auto r = jarque_bera(x);
  EXPECT_NEAR(r.statistic, jb, 1e-9 * jb);
  EXPECT_EQ(r.dof, 2);
  EXPECT_NEAR(r.p_value, std::exp(-jb / 2.0), 1e-12);
}

TEST(Pit, GaussianIdentity) {
  // chi1_cdf(eps^2) = |2 Phi(eps) - 1|, so with zero offset the innovation u
  // and the PIT residual are tied by u = |2 pit - 1|.
  for (double e : {-3.1, -0.7, -1e-3, 0.2, 1.0, 2.5}) {
    EXPECT_NEAR(specfun::chi1_cdf(e * e), std::fabs(2.0 * specfun::std_normal_cdf(e) - 1.0), 1e-12);
  }
  const Theta th{0.3, 0.2, 0.7, 0.0, 0.0};
  const SimPath p = simulate(SimConfig{Family::GaussVol, th, 500, 0, 2});
  const FilterOutput f = filter(Family::GaussVol, p.y, th);
  const auto pit = pit_series(Family::GaussVol, p.y, th);
  ASSERT_EQ(pit.size(), p.y.size());
  for (std::size_t t = 0; t < pit.size(); ++t) {
    EXPECT_NEAR(f.u[t], std::fabs(2.0 * pit[t] - 1.0), 1e-12);
    EXPECT_NEAR(pit[t], specfun::std_normal_cdf(p.y[t] * std::exp(-0.5 * f.alpha[t])), 1e-15);
  }
}

TEST(Pit, DurationResiduals) {
  const Theta th{0.1, 0.5, 0.3, 2.0};
  const SimPath p = simulate(SimConfig{Family::WeibullDur, th, 200, 0, 2});
  const FilterOutput f = filter(Family::WeibullDur, p.y, th);
  const auto pit = pit_series(Family::WeibullDur, p.y, th);
  const double beta = weibull_beta(2.0);
  for (std::size_t t = 0; t < pit.size(); ++t) {
    const double e = p.y[t] * std::exp(-f.alpha[t]) / beta;
    EXPECT_NEAR(pit[t], -std::expm1(-e * e), 1e-13);
  }
}

TEST(Pit, CalibratedUnderModel) {
  int pass = 0;
  const Theta th{0.3, 0.2, 0.7};
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SimPath p = simulate(SimConfig{Family::GaussVol, th, 2000, 0, s, 5});
    if (ks_uniform_test(pit_series(Family::GaussVol, p.y, th)).p_value > 0.01) ++pass;
  }
  EXPECT_GE(pass, 95);
}

TEST(Pit, DetectsHeavyTailsUnderGaussianFit) {
  int rejected = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SimPath p = simulate(SimConfig{Family::TVol, Theta{0.3, 0.2, 0.7, 5.0}, 5000, 0, s, 6});
    const auto fit = igasc::fit(Family::GaussVol, p.y);
    if (ks_uniform_test(pit_series(Family::GaussVol, p.y, fit.theta_hat)).p_value < 0.05) ++rejected;
  }
  EXPECT_GE(rejected, 6);
}
