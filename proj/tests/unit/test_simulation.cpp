#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <gtest/gtest.h>
#include <sstream>

#include "igasc/diagnostics.hpp"
#include "igasc/errors.hpp"
#include "igasc/rng.hpp"
#include "igasc/simulation.hpp"

using namespace igasc;
namespace bm = boost::math;

TEST(Rng, UniformRangeAndStreams) {
  Rng a(1), b(1), c(1, 1), d(1, 0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, b.uniform());
  }
  EXPECT_NE(Rng(1).next_u64(), c.next_u64());
  EXPECT_NE(Rng(1).next_u64(), d.next_u64());
  EXPECT_NE(Rng(1, 1).next_u64(), Rng(1, 0, 1).next_u64());
}

TEST(Rng, DistributionsMatchBoost) {
  Rng rng(2024);
  const int n = 200000;
  std::vector<double> z(n), t(n), e(n);
  for (int i = 0; i < n; ++i) {
    z[i] = rng.normal();
    t[i] = rng.student_t(4.5);
    e[i] = rng.exponential();
  }
  const bm::normal_distribution<double> nd;
  const bm::students_t_distribution<double> td(4.5);
  EXPECT_GT(ks_test(z, [&](double x) { return bm::cdf(nd, x); }).p_value, 0.001);
  EXPECT_GT(ks_test(t, [&](double x) { return bm::cdf(td, x); }).p_value, 0.001);
  EXPECT_GT(ks_test(e, [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); }).p_value, 0.001);
}

TEST(Simulate, NoDynamicsGivesConstantState) {
  SimConfig c{Family::GaussVol, Theta{0.4, 0.5, 0.0}, 100, 0, 3};
  const SimPath p = simulate(c);
  for (double a : p.alpha) EXPECT_EQ(a, 0.8);
}

TEST(Simulate, DeterministicAndSeedSensitive) {
  SimConfig c{Family::TVol, Theta{0.3, 0.2, 0.7, 10.0}, 500, 0, 11};
  const SimPath a = simulate(c), b = simulate(c);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.alpha, b.alpha);
  c.seed = 12;
  EXPECT_NE(simulate(c).y, a.y);
  c.theta.phi = 1.0;
  EXPECT_THROW(simulate(c), StationarityError);
  c.theta.phi = 0.2;
  c.length = 0;
  EXPECT_THROW(simulate(c), UsageError);
}

TEST(Simulate, BurnInDropsLeadingObservations) {
  SimConfig c{Family::ExpDur, Theta{0.3, 0.2, 0.7}, 50, 0, 5};
  c.burn_in = 0;
  c.length = 80;
  const SimPath full = simulate(c);
  c.burn_in = 30;
  c.length = 50;
  const SimPath cut = simulate(c);
  for (std::size_t t = 0; t < 50; ++t) EXPECT_EQ(cut.y[t], full.y[t + 30]);
}

TEST(Simulate, StationaryStateMoments) {
  // Exact state law needs offset 0; a positive offset biases eta upward.
  SimConfig c{Family::GaussVol, Theta{0.3, 0.2, 0.7, 0.0, 0.0}, 200000, 0, 21};
  const SimPath p = simulate(c);
  double m = 0.0, v = 0.0;
  for (double a : p.alpha) m += a;
  m /= p.alpha.size();
  for (double a : p.alpha) v += (a - m) * (a - m);
  v /= p.alpha.size();
  const auto sm = stationary_moments(c.theta.ar());
  // Effective sample size is reduced by the AR(1) dependence.
  const double n_eff = p.alpha.size() * (1.0 - 0.2) / (1.0 + 0.2);
  EXPECT_NEAR(m, sm.mu_alpha, 3.0 * std::sqrt(sm.sigma2_alpha / n_eff));
  EXPECT_NEAR(v, sm.sigma2_alpha, 3.0 * sm.sigma2_alpha * std::sqrt(2.0 / n_eff));
}

// Each test is run at 5% over 20 seeds; P(Binomial(20, 0.05) > 5) is about 3e-4.
TEST(Simulate, InnovationsAreIidNormal) {
  const bm::normal_distribution<double> nd;
  for (Family f : {Family::GaussVol, Family::TVol, Family::ExpDur, Family::WeibullDur}) {
    int ks_rej = 0, lb_rej = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SimConfig c{f, Theta{0.3, 0.2, 0.7, f == Family::TVol ? 10.0 : 2.0, 0.0}, 20000, 0, seed};
      const SimPath p = simulate(c);
      if (ks_test(p.eta, [&](double x) { return bm::cdf(nd, x); }).p_value < 0.05) ++ks_rej;
      if (ljung_box(p.eta, 20).p_value < 0.05) ++lb_rej;
    }
    EXPECT_LE(ks_rej, 5) << family_name(f);
    EXPECT_LE(lb_rej, 5) << family_name(f);
  }
}

TEST(Simulate, OffsetShiftsInnovationLaw) {
  SimConfig c{Family::GaussVol, Theta{0.3, 0.2, 0.7}, 100000, 0, 31};
  const SimPath p = simulate(c);
  const double u_floor = *std::min_element(p.u.begin(), p.u.end());
  EXPECT_GE(u_floor, std::erf(std::sqrt(0.5e-4)) - 1e-12);
}

TEST(SimulateArma, StateMatchesStationaryLaw) {
  const ArmaTheta th{ArmaSpec(0.1, {0.5, 0.2}, {0.6, 0.25}), ObsParams{0.0, 0.0}};
  const SimPath p = simulate_arma(Family::GaussVol, th, 200000, 3);
  double m = 0.0;
  for (double a : p.alpha) m += a;
  m /= p.alpha.size();
  EXPECT_NEAR(m, stationary_moments(th.state).mu_alpha, 0.02);
}

TEST(SimulateMv, CorrelationOfStandardizedReturns) {
  MvSimConfig c;
  c.theta.series = {{0.3, 0.2, 0.7}, {0.0, 0.9, 0.2}};
  Eigen::MatrixXd r(2, 2);
  r << 1.0, 0.9, 0.9, 1.0;
  c.theta.corr = CorrMatrix(r);
  c.theta.offset = 0.0;
  c.length = 100000;
  c.seed = 8;
  const MvSimPath p = simulate_mv(c);
  Eigen::ArrayXd e0 = p.y.col(0).array() * (-0.5 * p.alpha.col(0).array()).exp();
  Eigen::ArrayXd e1 = p.y.col(1).array() * (-0.5 * p.alpha.col(1).array()).exp();
  const double rho = (e0 * e1).mean() / std::sqrt(e0.square().mean() * e1.square().mean());
  EXPECT_NEAR(rho, 0.9, 0.005);
  // The score-copula map distorts dependence: corr(eta_1, eta_2) differs from rho.
  const Eigen::ArrayXd h0 = p.eta.col(0).array() - p.eta.col(0).mean();
  const Eigen::ArrayXd h1 = p.eta.col(1).array() - p.eta.col(1).mean();
  const double eta_corr = (h0 * h1).sum() / std::sqrt(h0.square().sum() * h1.square().sum());
  EXPECT_GT(eta_corr, 0.0);
  EXPECT_GT(std::fabs(eta_corr - 0.9), 0.05);
  for (int i = 0; i < 2; ++i) {
    std::vector<double> col(p.eta.col(i).data(), p.eta.col(i).data() + p.eta.rows());
    EXPECT_GT(ks_test(col, [](double x) { return bm::cdf(bm::normal_distribution<double>(), x); }).p_value, 0.01);
  }
}

TEST(McStudy, AggregatesAndIsThreadCountInvariant) {
  McStudyConfig c;
  c.family = Family::GaussVol;
  c.true_theta = Theta{0.3, 0.2, 0.7};
  c.lengths = {300, 600};
  c.replications = 6;
  c.seed = 99;
  c.threads = 1;
  const McStudyResult a = mc_study(c);
  c.threads = 3;
  const McStudyResult b = mc_study(c);
  std::ostringstream sa, sb;
  write_mc_csv(sa, a);
  write_mc_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  ASSERT_EQ(a.blocks.size(), 2u);
  for (const auto& blk : a.blocks) {
    EXPECT_GT(blk.n_converged, 0);
    for (const auto& s : blk.stats) EXPECT_NEAR(s.mse, s.variance + s.bias * s.bias, 1e-10);
    // Recompute the first parameter's statistics directly.
    double sum = 0.0;
    int n = 0;
    for (const auto& row : blk.estimates) {
      if (!row.empty()) {
        sum += row[0];
        ++n;
      }
    }
    EXPECT_NEAR(blk.stats[0].mean, sum / n, 1e-12);
    EXPECT_NEAR(blk.stats[0].bias, sum / n - 0.3, 1e-12);
  }
  EXPECT_EQ(sa.str().substr(0, sa.str().find('\n')), "family,T,parameter,true,mean,variance,bias,mse,n_converged");
}

TEST(McStudy, Errors) {
  McStudyConfig c;
  c.family = Family::GaussVol;
  c.true_theta = Theta{0.3, 0.2, 0.7};
  c.lengths = {200};
  c.replications = 1;
  EXPECT_THROW(mc_study(c), UsageError);
  c.replications = 2;
  c.fit.optim.max_evals = 3;  // nothing can converge
  EXPECT_THROW(mc_study(c), StudyError);
}
