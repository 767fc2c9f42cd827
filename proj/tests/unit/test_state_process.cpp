#include <cmath>
#include <gtest/gtest.h>
#include <random>
#include <vector>

#include "igasc/errors.hpp"
#include "igasc/state_process.hpp"

using namespace igasc;

TEST(StepAr1, Examples) {
  const ArSpec s{0.3, 0.2, 0.7};
  EXPECT_NEAR(step_ar1(s, 0.375, 0.0), 0.375, 1e-15);
  EXPECT_NEAR(step_ar1(ArSpec{0.0, 0.0, 1.0}, 123.0, -0.8), -0.8, 1e-15);
  EXPECT_NEAR(step_ar1(s, 1.0, 1.0), 1.2, 1e-15);
}

TEST(StepArma, Examples) {
  const ArmaSpec nested(ArSpec{0.3, 0.2, 0.7});
  const std::vector<double> a{0.9};
  const std::vector<double> e{-1.3};
  EXPECT_DOUBLE_EQ(step_arma(nested, a, e), step_ar1(ArSpec{0.3, 0.2, 0.7}, 0.9, -1.3));

  const ArmaSpec s(0.0, {0.5, 0.3}, {1.0, 0.2});
  const std::vector<double> ah{1.0, 1.0};
  const std::vector<double> eh{0.5, -0.4};
  EXPECT_NEAR(step_arma(s, ah, eh), 1.22, 1e-14);

  const ArmaSpec t(0.4, {0.5, 0.3}, {1.0, 0.2, 0.1});
  const double mu_a = stationary_moments(t).mu_alpha;
  const std::vector<double> fixed{mu_a, mu_a};
  const std::vector<double> zeros{0.0, 0.0, 0.0};
  EXPECT_NEAR(step_arma(t, fixed, zeros), mu_a, 1e-14);
}

TEST(StepArma, HistoryLengthMismatch) {
  const ArmaSpec s(0.0, {0.5, 0.3}, {1.0, 0.2});
  const std::vector<double> one{1.0};
  const std::vector<double> two{1.0, 1.0};
  EXPECT_THROW(step_arma(s, one, two), UsageError);
  EXPECT_THROW(step_arma(s, two, one), UsageError);
}

TEST(Stationarity, Checks) {
  EXPECT_TRUE((ArSpec{0.0, 0.99, 1.0}.stationary()));
  EXPECT_FALSE((ArSpec{0.0, 1.0, 1.0}.stationary()));
  EXPECT_FALSE((ArSpec{0.0, -1.2, 1.0}.stationary()));
  EXPECT_TRUE(ArmaSpec(0.0, {0.5, 0.3}, {1.0}).stationary());
  EXPECT_FALSE(ArmaSpec(0.0, {0.5, 0.6}, {1.0}).stationary());
  // Roots of 1 - 1.2 z + 0.32 z^2 are 1.25 and 2.5.
  EXPECT_NEAR(ArmaSpec(0.0, {1.2, -0.32}, {1.0}).spectral_radius(), 0.8, 1e-12);
  EXPECT_THROW(stationary_moments(ArSpec{0.0, 1.0, 1.0}), StationarityError);
  EXPECT_THROW(stationary_moments(ArmaSpec(0.0, {0.5, 0.6}, {1.0})), StationarityError);
}

TEST(StationaryMoments, ArExamples) {
  const auto m = stationary_moments(ArSpec{0.3, 0.2, 0.7});
  EXPECT_NEAR(m.mu_alpha, 0.375, 1e-15);
  EXPECT_NEAR(m.sigma2_alpha, 0.49 / 0.96, 1e-15);
  const auto w = stationary_moments(ArSpec{0.0, 0.0, 1.0});
  EXPECT_EQ(w.mu_alpha, 0.0);
  EXPECT_EQ(w.sigma2_alpha, 1.0);
  const auto n = stationary_moments(ArmaSpec(ArSpec{0.3, 0.2, 0.7}));
  EXPECT_NEAR(n.mu_alpha, m.mu_alpha, 1e-14);
  EXPECT_NEAR(n.sigma2_alpha, m.sigma2_alpha, 1e-12);
}

TEST(StationaryMoments, ArmaAgainstSimulation) {
  const ArmaSpec s(0.2, {0.6, -0.2}, {0.8, 0.3});
  const auto m = stationary_moments(s);
  std::mt19937_64 gen(20240917);
  std::normal_distribution<double> z;
  const int n = 1'000'000;
  double a1 = m.mu_alpha, a2 = m.mu_alpha, e1 = 0.0;
  double sum = 0.0, sum2 = 0.0;
  for (int t = 0; t < n + 1000; ++t) {
    const double e = z(gen);
    const double next = s.mu + s.phi[0] * a1 + s.phi[1] * a2 + s.psi[0] * e + s.psi[1] * e1;
    a2 = a1;
    a1 = next;
    e1 = e;
    if (t >= 1000) {
      sum += next;
      sum2 += next * next;
    }
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_NEAR(m.mu_alpha, 0.2 / 0.6, 1e-14);
  EXPECT_NEAR(mean, m.mu_alpha, 0.01);
  EXPECT_NEAR(var / m.sigma2_alpha, 1.0, 0.01);
}

TEST(StationaryStateLaw, MatchesMomentsAndSimulation) {
  const ArmaSpec s(0.1, {0.5, 0.2}, {1.0, 0.4});
  const auto law = stationary_state_law(s);
  const auto m = stationary_moments(s);
  ASSERT_EQ(law.mean.size(), 3);
  EXPECT_NEAR(law.mean(0), m.mu_alpha, 1e-14);
  EXPECT_NEAR(law.mean(1), m.mu_alpha, 1e-14);
  EXPECT_EQ(law.mean(2), 0.0);
  EXPECT_NEAR(law.covariance(0, 0), m.sigma2_alpha, 1e-10);
  EXPECT_NEAR(law.covariance(2, 2), 1.0, 1e-12);  // eta_{t-1}
  // Cov(alpha_t, eta_{t-1}) = psi_0 since alpha_t loads eta_{t-1} with psi_0.
  EXPECT_NEAR(law.covariance(0, 2), 1.0, 1e-12);

  // Lag-one autocovariance against simulation.
  std::mt19937_64 gen(7);
  std::normal_distribution<double> z;
  double a1 = 0.0, a2 = 0.0, e1 = 0.0, sxy = 0.0, sx = 0.0;
  const int n = 1'000'000;
  for (int t = 0; t < n + 1000; ++t) {
    const double e = z(gen);
    const double next = s.mu + 0.5 * a1 + 0.2 * a2 + e + 0.4 * e1;
    a2 = a1;
    a1 = next;
    e1 = e;
    if (t >= 1000) {
      sxy += (a1 - m.mu_alpha) * (a2 - m.mu_alpha);
      sx += (a1 - m.mu_alpha) * (a1 - m.mu_alpha);
    }
  }
  EXPECT_NEAR((sxy / n) / law.covariance(0, 1), 1.0, 0.02);
  EXPECT_NEAR((sx / n) / law.covariance(0, 0), 1.0, 0.02);
}

TEST(ForecastState, Examples) {
  const ArSpec s{0.3, 0.2, 0.7};
  const auto h1 = forecast_state(s, 0.9, 1);
  EXPECT_EQ(h1.mean, 0.9);
  EXPECT_EQ(h1.variance, 0.0);
  const auto h2 = forecast_state(s, 1.0, 2);
  EXPECT_NEAR(h2.mean, 0.5, 1e-15);
  EXPECT_NEAR(h2.variance, 0.96 * 0.49 / 0.96, 1e-15);
  const auto far = forecast_state(s, 3.0, 500);
  const auto m = stationary_moments(s);
  EXPECT_NEAR(far.mean, m.mu_alpha, 1e-12);
  EXPECT_NEAR(far.variance, m.sigma2_alpha, 1e-12);
  EXPECT_THROW(forecast_state(s, 0.0, 0), UsageError);
}

TEST(ForecastState, AgainstSimulatedPaths) {
  const ArSpec s{0.1, 0.8, 0.5};
  const int h = 4;
  const auto f = forecast_state(s, 1.5, h);
  std::mt19937_64 gen(99);
  std::normal_distribution<double> z;
  const int n = 100'000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double a = 1.5;
    for (int k = 1; k < h; ++k) a = step_ar1(s, a, z(gen));
    sum += a;
    sum2 += a * a;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_NEAR(mean, f.mean, 3.0 * std::sqrt(f.variance / n));
  EXPECT_NEAR(var, f.variance, 3.0 * f.variance * std::sqrt(2.0 / n));
}

TEST(ArPath, SampleAcfMatchesPhi) {
  const ArSpec s{0.0, 0.6, 1.0};
  std::mt19937_64 gen(3);
  std::normal_distribution<double> z;
  const int n = 1'000'000;
  std::vector<double> a(n);
  double x = 0.0;
  for (int t = 0; t < n; ++t) {
    x = step_ar1(s, x, z(gen));
    a[t] = x;
  }
  double mean = 0.0;
  for (double v : a) mean += v;
  mean /= n;
  double c0 = 0.0;
  for (double v : a) c0 += (v - mean) * (v - mean);
  for (int tau = 1; tau <= 5; ++tau) {
    double c = 0.0;
    for (int t = tau; t < n; ++t) c += (a[t] - mean) * (a[t - tau] - mean);
    EXPECT_NEAR(c / c0, std::pow(0.6, tau), 0.01) << tau;
  }
}
