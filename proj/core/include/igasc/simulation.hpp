#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "igasc/estimation.hpp"
#include "igasc/mv_model.hpp"
#include "igasc/obs_models.hpp"
#include "igasc/rng.hpp"

namespace igasc {

struct SimConfig {
  Family family = Family::GaussVol;
  Theta theta;
  std::size_t length = 1;
  std::size_t burn_in = 0;
  std::uint64_t seed = 0;
  /// Sub-stream coordinates; replication r of a study uses its own pair.
  std::uint64_t stream = 0;
  std::uint64_t substream = 0;
};

struct SimPath {
  std::vector<double> y;
  std::vector<double> alpha;
  std::vector<double> eta;
  std::vector<double> u;
  double alpha_next = 0.0;  ///< state after the last observation
};

/// Draws one standardized observation eps from the family's law:
/// N(0,1), unit-variance t, Exp(1), or the mean-one Weibull.
double draw_standardized(Family family, const ObsParams& params, Rng& rng);

/// alpha_1 from the stationary law, then y_t from alpha_t, eta_t from the
/// innovation map, alpha_{t+1} from the state equation.
SimPath simulate(const SimConfig& config);

/// ARMA state; the pre-sample recursion state is drawn from its stationary
/// joint law.
SimPath simulate_arma(Family family, const ArmaTheta& theta, std::size_t length, std::uint64_t seed,
                      std::size_t burn_in = 0);

struct MvSimConfig {
  MvTheta theta;
  std::size_t length = 1;
  std::size_t burn_in = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct MvSimPath {
  Eigen::MatrixXd y;      ///< T x N
  Eigen::MatrixXd alpha;  ///< T x N
  Eigen::MatrixXd eta;    ///< T x N
  Eigen::VectorXd alpha_next;
};

/// eps_t ~ N(0, Sigma) via the Cholesky factor applied to iid normals.
MvSimPath simulate_mv(const MvSimConfig& config);

struct McStudyConfig {
  Family family = Family::TVol;
  Theta true_theta;
  std::vector<std::size_t> lengths;
  int replications = 2;
  std::uint64_t seed = 0;
  FitOptions fit;
  int threads = 0;  ///< 0 = default_thread_count()
};

struct McParamStats {
  std::string name;
  double true_value = 0.0;
  double mean = 0.0;
  double variance = 0.0;  ///< population variance over converged replications
  double bias = 0.0;      ///< mean - true
  double mse = 0.0;       ///< mean squared error, = variance + bias^2
};

struct McBlock {
  std::size_t length = 0;
  int n_converged = 0;
  std::vector<McParamStats> stats;
  /// Natural-scale estimates per replication; empty rows for excluded ones.
  std::vector<std::vector<double>> estimates;
};

struct McStudyResult {
  Family family = Family::TVol;
  int replications = 0;
  std::vector<McBlock> blocks;
};

/// For each length, simulates and fits `replications` datasets and
/// aggregates mean / variance / bias / MSE over converged fits. Replication
/// r at length T uses Rng stream (T, r) so results do not depend on the
/// thread count.
McStudyResult mc_study(const McStudyConfig& config);

/// CSV with header family,T,parameter,true,mean,variance,bias,mse,n_converged.
void write_mc_csv(std::ostream& os, const McStudyResult& result);

}  // namespace igasc
