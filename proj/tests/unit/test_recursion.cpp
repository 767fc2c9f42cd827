#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/exponential.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/distributions/weibull.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <gtest/gtest.h>
#include <numbers>
#include <random>

#include "igasc/errors.hpp"
#include "igasc/recursion.hpp"
#include "igasc/simulation.hpp"

using namespace igasc;
namespace bm = boost::math;

namespace {

// Straight-line filter built from Boost distributions only.
double naive_loglik(Family f, const std::vector<double>& y, const Theta& th) {
  const bm::normal_distribution<double> n;
  double alpha = th.mu / (1.0 - th.phi);
  double ll = 0.0;
  for (double v : y) {
    // Both tails of the score CDF, so eta keeps full precision near u = 1.
    double logf = 0.0, lo = 0.0, hi = 0.0;
    auto tails = [&](const auto& dist, double x) {
      lo = bm::cdf(dist, x);
      hi = bm::cdf(bm::complement(dist, x));
    };
    if (f == Family::GaussVol) {
      const double s = std::exp(0.5 * alpha);
      logf = std::log(bm::pdf(bm::normal_distribution<double>(0.0, s), v));
      tails(bm::chi_squared_distribution<double>(1.0), v * v / (s * s) + th.offset);
    } else if (f == Family::TVol) {
      const double nu = th.shape;
      const double s = std::exp(0.5 * alpha) * std::sqrt((nu - 2.0) / nu);
      logf = std::log(bm::pdf(bm::students_t_distribution<double>(nu), v / s) / s);
      const double e2 = v * v * std::exp(-alpha) + th.offset;
      tails(bm::fisher_f_distribution<double>(1.0, nu), nu / (nu - 2.0) * e2);
    } else if (f == Family::ExpDur) {
      logf = std::log(bm::pdf(bm::exponential_distribution<double>(std::exp(-alpha)), v));
      tails(bm::exponential_distribution<double>(1.0), v * std::exp(-alpha));
    } else {
      const double k = th.shape;
      const double beta = 1.0 / bm::tgamma(1.0 + 1.0 / k);
      logf = std::log(bm::pdf(bm::weibull_distribution<double>(k, beta * std::exp(alpha)), v));
      tails(bm::weibull_distribution<double>(k, beta), v * std::exp(-alpha));
    }
    ll += logf;
    const double eta = lo <= hi ? bm::quantile(n, std::max(lo, 1e-15)) : -bm::quantile(n, std::max(hi, 1e-15));
    alpha = th.mu + th.phi * alpha + th.psi * eta;
  }
  return ll;
}

}  // namespace

TEST(Filter, SingleObservation) {
  const std::vector<double> y{0.0};
  const FilterOutput out = filter(Family::GaussVol, y, Theta{0.0, 0.0, 1.0});
  EXPECT_EQ(out.alpha[0], 0.0);
  EXPECT_NEAR(out.loglik, -0.5 * std::log(2.0 * std::numbers::pi), 1e-15);
  EXPECT_TRUE(std::isfinite(out.eta[0]));
}

TEST(Filter, DegenerateDynamicsIsIid) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> z;
  std::vector<double> y(200);
  for (double& v : y) v = 1.3 * z(gen);
  const Theta th{0.4, 0.0, 0.0};
  const FilterOutput out = filter(Family::GaussVol, y, th);
  double iid = 0.0;
  for (double v : y) iid += cond_logpdf(Family::GaussVol, v, 0.4, {});
  for (double a : out.alpha) EXPECT_EQ(a, 0.4);
  EXPECT_NEAR(out.loglik, iid, 1e-10);
  std::vector<double> rev(y.rbegin(), y.rend());
  EXPECT_NEAR(filter(Family::GaussVol, rev, th).loglik, out.loglik, 1e-10);
  const Theta dyn{0.3, 0.2, 0.7};
  EXPECT_GT(std::fabs(filter(Family::GaussVol, rev, dyn).loglik - filter(Family::GaussVol, y, dyn).loglik), 1e-6);
}

TEST(Filter, MatchesNaiveImplementation) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const Family fams[] = {Family::GaussVol, Family::TVol, Family::ExpDur, Family::WeibullDur};
  for (int rep = 0; rep < 20; ++rep) {
    const Family f = fams[rep % 4];
    Theta th{u01(gen) - 0.5, 1.8 * u01(gen) - 0.9, 0.1 + u01(gen), 0.0};
    if (f == Family::TVol) th.shape = 2.5 + 20.0 * u01(gen);
    if (f == Family::WeibullDur) th.shape = 0.5 + 3.0 * u01(gen);
    SimConfig c{f, Theta{0.1, 0.5, 0.3, th.shape}, 300, 0, static_cast<std::uint64_t>(rep)};
    const SimPath p = simulate(c);
    const double got = filter(f, p.y, th).loglik;
    const double ref = naive_loglik(f, p.y, th);
    EXPECT_NEAR(got, ref, 1e-10 * std::max(1.0, std::fabs(ref))) << family_name(f) << ' ' << rep;
  }
}

TEST(Filter, InvariantsAndErrors) {
  SimConfig c{Family::TVol, Theta{0.3, 0.2, 0.7, 10.0}, 500, 0, 3};
  const SimPath p = simulate(c);
  const FilterOutput out = filter(Family::TVol, p.y, c.theta);
  double sum = 0.0;
  for (double l : out.per_obs_loglik) sum += l;
  EXPECT_NEAR(out.loglik, sum, 1e-9);
  for (std::size_t t = 0; t + 1 < p.y.size(); ++t) {
    EXPECT_NEAR(out.alpha[t + 1], step_ar1(c.theta.ar(), out.alpha[t], out.eta[t]), 1e-12);
  }
  EXPECT_NEAR(out.alpha_next, step_ar1(c.theta.ar(), out.alpha.back(), out.eta.back()), 1e-12);
  EXPECT_THROW(filter(Family::TVol, p.y, Theta{0.3, 1.0, 0.7, 10.0}), StationarityError);
  std::vector<double> d{1.0, 2.0, -1.0, 3.0};
  try {
    filter(Family::ExpDur, d, Theta{0.0, 0.5, 0.3});
    FAIL() << "expected ObservationError";
  } catch (const ObservationError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Filter, InvertsSimulation) {
  for (Family f : {Family::GaussVol, Family::TVol, Family::ExpDur, Family::WeibullDur}) {
    SimConfig c{f, Theta{0.3, 0.2, 0.7, f == Family::TVol ? 10.0 : 2.0}, 2000, 0, 77};
    const SimPath p = simulate(c);
    const FilterOutput out = filter(f, p.y, c.theta, p.alpha[0]);
    for (std::size_t t = 0; t < p.y.size(); ++t) {
      ASSERT_NEAR(out.eta[t], p.eta[t], 1e-10);
      ASSERT_NEAR(out.u[t], p.u[t], 1e-10);
    }
  }
}

TEST(Filter, FiniteDifferenceGradientsAgree) {
  SimConfig c{Family::GaussVol, Theta{0.3, 0.2, 0.7}, 1000, 0, 5};
  const SimPath p = simulate(c);
  auto ll = [&](double mu) { return filter(Family::GaussVol, p.y, Theta{mu, 0.25, 0.6}).loglik; };
  const double h = 1e-6;
  const double fwd = (ll(0.28 + h) - ll(0.28)) / h;
  const double ctr = (ll(0.28 + h) - ll(0.28 - h)) / (2.0 * h);
  EXPECT_NEAR(fwd, ctr, 1e-4 * std::max(1.0, std::fabs(ctr)));
}

TEST(ArmaFilter, Ar1Nesting) {
  SimConfig c{Family::GaussVol, Theta{0.3, 0.2, 0.7}, 500, 0, 9};
  const SimPath p = simulate(c);
  const FilterOutput ar = filter(Family::GaussVol, p.y, c.theta);
  const ArmaTheta arma{ArmaSpec(c.theta.ar()), c.theta.obs()};
  const FilterOutput am = filter(Family::GaussVol, p.y, arma);
  for (std::size_t t = 0; t < p.y.size(); ++t) {
    EXPECT_DOUBLE_EQ(am.alpha[t], ar.alpha[t]);
    EXPECT_DOUBLE_EQ(am.eta[t], ar.eta[t]);
  }
  EXPECT_DOUBLE_EQ(am.loglik, ar.loglik);
}

TEST(ArmaFilter, HigherOrderMatchesManualRecursion) {
  const ArmaTheta th{ArmaSpec(0.1, {0.5, 0.2}, {0.6, 0.25}), ObsParams{0.0, 1e-4}};
  const SimPath p = simulate_arma(Family::GaussVol, th, 300, 12);
  const FilterOutput out = filter(Family::GaussVol, p.y, th);
  const double mu_a = stationary_moments(th.state).mu_alpha;
  double a1 = mu_a, a2 = mu_a, e1 = 0.0, ll = 0.0;
  for (std::size_t t = 0; t < p.y.size(); ++t) {
    EXPECT_NEAR(out.alpha[t], a1, 1e-12);
    ll += cond_logpdf(Family::GaussVol, p.y[t], a1, th.obs);
    const double e = innovation(Family::GaussVol, p.y[t], a1, th.obs).eta;
    const double next = 0.1 + 0.5 * a1 + 0.2 * a2 + 0.6 * e + 0.25 * e1;
    a2 = a1;
    a1 = next;
    e1 = e;
  }
  EXPECT_NEAR(out.loglik, ll, 1e-9);
}

TEST(ArmaFilter, StationaryAverageIsDeterministic) {
  const ArmaTheta th{ArmaSpec(0.1, {0.5, 0.2}, {0.6, 0.25}), ObsParams{0.0, 1e-4}};
  const SimPath p = simulate_arma(Family::GaussVol, th, 300, 12);
  const double a = arma_loglik_stationary_average(Family::GaussVol, p.y, th, 64, 3);
  const double b = arma_loglik_stationary_average(Family::GaussVol, p.y, th, 64, 3);
  EXPECT_EQ(a, b);
  EXPECT_NEAR(a, filter(Family::GaussVol, p.y, th).loglik, 5.0);
}

TEST(MvFilter, IdentityDecomposes) {
  MvSimConfig c;
  c.theta.series = {{0.3, 0.2, 0.7}, {0.1, 0.8, 0.3}};
  c.theta.corr = CorrMatrix::identity(2);
  c.length = 400;
  c.seed = 6;
  const MvSimPath p = simulate_mv(c);
  const MvFilterOutput mv = filter_mv(p.y, c.theta);
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    std::vector<double> col(p.y.col(i).data(), p.y.col(i).data() + p.y.rows());
    sum += filter(Family::GaussVol, col, Theta{c.theta.series[i].mu, c.theta.series[i].phi, c.theta.series[i].psi})
               .loglik;
  }
  EXPECT_NEAR(mv.loglik, sum, 1e-10);
}

TEST(MvFilter, HandUnrolledThreeSteps) {
  MvTheta th;
  th.series = {{0.1, 0.5, 0.4}, {-0.2, 0.3, 0.6}};
  Eigen::MatrixXd r(2, 2);
  r << 1.0, 0.4, 0.4, 1.0;
  th.corr = CorrMatrix(r);
  th.offset = 1e-4;
  Eigen::MatrixXd y(3, 2);
  y << 0.5, -0.3, 1.2, 0.8, -0.1, 0.05;
  const MvFilterOutput out = filter_mv(y, th);
  const boost::math::normal_distribution<double> n;
  const boost::math::chi_squared_distribution<double> chi1(1.0);
  double a[2] = {0.1 / 0.5, -0.2 / 0.7};
  double ll = 0.0;
  for (int t = 0; t < 3; ++t) {
    const double s0 = std::exp(0.5 * a[0]), s1 = std::exp(0.5 * a[1]);
    const double e0 = y(t, 0) / s0, e1 = y(t, 1) / s1;
    const double q = (e0 * e0 - 2 * 0.4 * e0 * e1 + e1 * e1) / (1 - 0.16);
    ll += -std::log(2 * std::numbers::pi) - 0.5 * std::log(1 - 0.16) - std::log(s0 * s1) - 0.5 * q;
    EXPECT_NEAR(out.alpha(t, 0), a[0], 1e-12);
    EXPECT_NEAR(out.alpha(t, 1), a[1], 1e-12);
    const double eta0 = boost::math::quantile(n, boost::math::cdf(chi1, e0 * e0 + 1e-4));
    const double eta1 = boost::math::quantile(n, boost::math::cdf(chi1, e1 * e1 + 1e-4));
    a[0] = 0.1 + 0.5 * a[0] + 0.4 * eta0;
    a[1] = -0.2 + 0.3 * a[1] + 0.6 * eta1;
  }
  EXPECT_NEAR(out.loglik, ll, 1e-12);
}

TEST(MvFilter, IgnoringCorrelationLowersLikelihood) {
  MvSimConfig c;
  c.theta.series = {{0.3, 0.2, 0.7}, {0.3, 0.2, 0.7}};
  Eigen::MatrixXd r(2, 2);
  r << 1.0, 0.7, 0.7, 1.0;
  c.theta.corr = CorrMatrix(r);
  c.length = 2000;
  c.seed = 1;
  const MvSimPath p = simulate_mv(c);
  MvTheta ind = c.theta;
  ind.corr = CorrMatrix::identity(2);
  EXPECT_GT(filter_mv(p.y, c.theta).loglik, filter_mv(p.y, ind).loglik);
}
