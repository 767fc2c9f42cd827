#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>
#include <sstream>

#include "igasc/baselines.hpp"
#include "igasc/diagnostics.hpp"
#include "igasc/errors.hpp"
#include "igasc/estimation.hpp"
#include "igasc/forecasting.hpp"
#include "igasc/parallel.hpp"
#include "igasc/recursion.hpp"
#include "igasc/simulation.hpp"
#include "ingest.hpp"
#include "theta_io.hpp"

namespace igasc::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string family;
  std::vector<std::string> data;
  std::string kind;
  std::string theta_path;
  std::string theta_out;
  std::vector<std::string> sets;
  std::uint64_t seed = 1;
  std::vector<int> horizons{1, 5, 20};
  int reps = 50;
  std::vector<std::size_t> lengths;
  double offset = kDefaultOffset;
  std::string out_dir;
  std::string label;
  bool compare_garch = false;
  int nodes = kDefaultQuadratureNodes;
  std::size_t paths = 100000;
  std::size_t burn_in = 0;
  std::vector<double> k_list;
  std::vector<double> nu_list;
  double eps_min = std::numeric_limits<double>::quiet_NaN();
  double eps_max = std::numeric_limits<double>::quiet_NaN();
  int points = 201;
  bool verbose = false;
};

// A family name as given on the command line, univariate or not.
struct ModelChoice {
  bool multivariate = false;
  Family family = Family::GaussVol;
  std::string name;
};

ModelChoice resolve_family(const Options& opt, const std::optional<ParamFile>& file) {
  std::string name = opt.family;
  if (file && !file->family.empty()) {
    if (!name.empty() && name != file->family) {
      throw UsageError("--family " + name + " disagrees with parameter file family " + file->family);
    }
    name = file->family;
  }
  if (name.empty()) throw UsageError("--family is required");
  ModelChoice m;
  m.name = name;
  if (name == kMvFamily) {
    m.multivariate = true;
    return m;
  }
  const auto f = parse_family(name);
  if (!f) throw UsageError("unknown family '" + name + "'");
  m.family = *f;
  return m;
}

std::optional<ParamFile> load_params(const Options& opt) {
  if (opt.theta_path.empty() && opt.sets.empty()) return std::nullopt;
  ParamFile f = opt.theta_path.empty() ? ParamFile{} : read_param_file(opt.theta_path);
  apply_overrides(f, opt.sets);
  return f;
}

DataKind default_kind(const ModelChoice& m) {
  return !m.multivariate && !is_volatility(m.family) ? DataKind::Durations : DataKind::Returns;
}

Dataset load_data(const Options& opt, const ModelChoice& m) {
  if (opt.data.empty()) throw UsageError("--data is required");
  if (!m.multivariate && opt.data.size() != 1) throw UsageError("univariate families take exactly one --data file");
  if (m.multivariate && opt.data.size() < 2) throw UsageError("mv-gauss-vol needs at least two --data files");
  const DataKind kind = opt.kind.empty() ? default_kind(m) : parse_kind(opt.kind);
  if (!m.multivariate && !is_volatility(m.family) && kind != DataKind::Durations) {
    throw UsageError("duration families need --kind durations");
  }
  Dataset d = ingest(opt.data, kind);
  spdlog::info("{}: {} observations", d.label, d.values.rows());
  return d;
}

// Writes a named table to --out/<name> or to the output stream.
class Sink {
 public:
  Sink(const Options& opt, std::ostream& out) : dir_(opt.out_dir), out_(out) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }
  void write(const std::string& name, const std::function<void(std::ostream&)>& writer) const {
    if (dir_.empty()) {
      writer(out_);
      return;
    }
    const fs::path path = fs::path(dir_) / name;
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write '" + path.string() + "'");
    writer(f);
    spdlog::info("wrote {}", path.string());
  }
  bool to_files() const { return !dir_.empty(); }

 private:
  std::string dir_;
  std::ostream& out_;
};

void save_params(const Options& opt, const Sink& sink, const ParamFile& params) {
  if (!opt.theta_out.empty()) {
    std::ofstream f(opt.theta_out);
    if (!f) throw UsageError("cannot write '" + opt.theta_out + "'");
    write_param_file(f, params);
  } else if (sink.to_files()) {
    sink.write("theta.txt", [&](std::ostream& os) { write_param_file(os, params); });
  }
}

std::string num(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : std::string(); }

void write_param_rows(std::ostream& os, const std::string& model, const std::vector<ParamEstimate>& params,
                      double loglik, std::size_t n) {
  for (const auto& p : params) {
    os << model << ',' << p.name << ',' << num(p.estimate) << ',' << num(p.std_error) << ',' << num(p.ci_lo)
       << ',' << num(p.ci_hi) << '\n';
  }
  os << model << ",loglik," << num(loglik) << ",,,\n";
  os << model << ",n," << n << ",,,\n";
}

template <typename P>
void log_fit(const std::string& model, const FitResult<P>& r) {
  spdlog::info("{}: loglik {:.6f}, {} evaluations{}", model, r.loglik, r.eval_count,
               r.converged ? "" : " (NOT converged)");
  if (!r.std_errors_defined) spdlog::warn("{}: Hessian not positive definite; standard errors undefined", model);
  if (r.short_sample) spdlog::warn("{}: fewer than {} observations", model, kMinFitLength);
}

FitOptions fit_options(const Options& opt) {
  FitOptions fo;
  fo.offset = opt.offset;
  return fo;
}

// Parameters from --theta/--set, or a fit when neither is given.
Theta univariate_theta(const Options& opt, const ModelChoice& m, const std::optional<ParamFile>& file,
                       std::span<const double> data) {
  if (file) return theta_from_params(m.family, *file);
  spdlog::info("no parameters given; fitting {}", m.name);
  const auto r = fit(m.family, data, std::nullopt, fit_options(opt));
  log_fit(m.name, r);
  return r.theta_hat;
}

MvTheta multivariate_theta(const Options& opt, const std::optional<ParamFile>& file, const Eigen::MatrixXd& data) {
  if (file) return mv_theta_from_params(*file);
  spdlog::info("no parameters given; fitting {}", kMvFamily);
  const auto r = fit_mv(data, std::nullopt, fit_options(opt));
  log_fit(kMvFamily, r);
  return r.theta_hat;
}

std::optional<GarchConditional> garch_for(const ModelChoice& m) {
  if (m.multivariate) return std::nullopt;
  if (m.family == Family::GaussVol) return GarchConditional::Gaussian;
  if (m.family == Family::TVol) return GarchConditional::StudentT;
  return std::nullopt;
}

std::string garch_name(GarchConditional c) { return c == GarchConditional::Gaussian ? "garch" : "garch-t"; }

// ---------------------------------------------------------------- fit

void cmd_fit(const Options& opt, const Sink& sink) {
  const auto file = load_params(opt);
  const ModelChoice m = resolve_family(opt, file);
  const Dataset d = load_data(opt, m);
  const auto n = static_cast<std::size_t>(d.values.rows());
  std::ostringstream table;
  table << "model,parameter,estimate,se,ci_lo,ci_hi\n";
  if (m.multivariate) {
    std::optional<MvTheta> init;
    if (file) init = mv_theta_from_params(*file);
    const auto r = fit_mv(d.values, init, fit_options(opt));
    log_fit(m.name, r);
    write_param_rows(table, m.name, r.params, r.loglik, n);
    save_params(opt, sink, params_from_mv_theta(r.theta_hat));
  } else {
    const std::vector<double> y = d.column(0);
    std::optional<Theta> init;
    if (file) init = theta_from_params(m.family, *file);
    const auto r = fit(m.family, y, init, fit_options(opt));
    log_fit(m.name, r);
    write_param_rows(table, m.name, r.params, r.loglik, n);
    save_params(opt, sink, params_from_theta(m.family, r.theta_hat));
    if (opt.compare_garch) {
      const auto cond = garch_for(m);
      if (!cond) throw UsageError("--compare-garch applies to gauss-vol and t-vol only");
      const auto g = garch_fit(*cond, y);
      log_fit(garch_name(*cond), g);
      write_param_rows(table, garch_name(*cond), g.params, g.loglik, n);
    }
  }
  sink.write("fit.csv", [&](std::ostream& os) { os << table.str(); });
}

// ----------------------------------------------------------- simulate

MvTheta default_mv_theta() {
  MvTheta t;
  const Theta u = default_theta(Family::GaussVol);
  t.series = {u.ar(), u.ar()};
  Eigen::MatrixXd c(2, 2);
  c << 1.0, 0.5, 0.5, 1.0;
  t.corr = CorrMatrix(c);
  return t;
}

void cmd_simulate(const Options& opt, const Sink& sink) {
  const auto file = load_params(opt);
  const ModelChoice m = resolve_family(opt, file);
  if (opt.lengths.size() != 1) throw UsageError("simulate takes a single --T");
  const std::size_t length = opt.lengths.front();
  if (m.multivariate) {
    MvSimConfig c;
    c.theta = file ? mv_theta_from_params(*file) : default_mv_theta();
    c.length = length;
    c.burn_in = opt.burn_in;
    c.seed = opt.seed;
    const MvSimPath p = simulate_mv(c);
    sink.write("simulate.csv", [&](std::ostream& os) {
      const int dim = c.theta.dim();
      os << 't';
      for (int i = 1; i <= dim; ++i) os << ",y_" << i;
      for (int i = 1; i <= dim; ++i) os << ",alpha_" << i;
      os << '\n';
      for (Eigen::Index t = 0; t < p.y.rows(); ++t) {
        os << t + 1;
        for (int i = 0; i < dim; ++i) os << ',' << num(p.y(t, i));
        for (int i = 0; i < dim; ++i) os << ',' << num(p.alpha(t, i));
        os << '\n';
      }
    });
    return;
  }
  SimConfig c;
  c.family = m.family;
  c.theta = file ? theta_from_params(m.family, *file) : default_theta(m.family);
  if (!file) c.theta.offset = opt.offset;
  c.length = length;
  c.burn_in = opt.burn_in;
  c.seed = opt.seed;
  const SimPath p = simulate(c);
  sink.write("simulate.csv", [&](std::ostream& os) {
    os << "t,y,alpha,eta,u\n";
    for (std::size_t t = 0; t < p.y.size(); ++t) {
      os << t + 1 << ',' << num(p.y[t]) << ',' << num(p.alpha[t]) << ',' << num(p.eta[t]) << ',' << num(p.u[t])
         << '\n';
    }
  });
}

// ----------------------------------------------------------- forecast

double empirical_quantile(std::vector<double>& sorted_values, double p) {
  const double pos = p * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted_values.size() - 1);
  return sorted_values[lo] + (pos - lo) * (sorted_values[hi] - sorted_values[lo]);
}

void cmd_forecast(const Options& opt, const Sink& sink) {
  const auto file = load_params(opt);
  const ModelChoice m = resolve_family(opt, file);
  const Dataset d = load_data(opt, m);
  for (int h : opt.horizons) {
    if (h < 1) throw UsageError("horizons must be >= 1");
  }
  std::ostringstream table;
  if (m.multivariate) {
    const MvTheta theta = multivariate_theta(opt, file, d.values);
    const MvFilterOutput f = filter_mv(d.values, theta);
    table << "horizon,series,mean,sd,q05,q50,q95\n";
    for (int h : opt.horizons) {
      const Eigen::MatrixXd sample = mv_forecast(theta, f.alpha_next, h, opt.paths, opt.seed);
      for (Eigen::Index i = 0; i < sample.cols(); ++i) {
        std::vector<double> col(sample.col(i).data(), sample.col(i).data() + sample.rows());
        const double mean = sample.col(i).mean();
        const double sd = std::sqrt((sample.col(i).array() - mean).square().mean());
        std::sort(col.begin(), col.end());
        table << h << ',' << i + 1 << ',' << num(mean) << ',' << num(sd) << ',' << num(empirical_quantile(col, 0.05))
              << ',' << num(empirical_quantile(col, 0.5)) << ',' << num(empirical_quantile(col, 0.95)) << '\n';
      }
    }
  } else {
    const std::vector<double> y = d.column(0);
    const Theta theta = univariate_theta(opt, m, file, y);
    const FilterOutput f = filter(m.family, y, theta);
    table << "horizon,mean,sd,q05,q50,q95\n";
    for (int h : opt.horizons) {
      const PredictiveDensity pd = make_predictive(m.family, theta, f.alpha_next, h, opt.nodes);
      const PredictiveMoments mom = predictive_moments(pd);
      table << h << ',' << num(mom.mean) << ',' << num(std::sqrt(mom.variance)) << ','
            << num(predictive_quantile(pd, 0.05)) << ',' << num(predictive_quantile(pd, 0.5)) << ','
            << num(predictive_quantile(pd, 0.95)) << '\n';
    }
  }
  sink.write("forecast.csv", [&](std::ostream& os) { os << table.str(); });
}

// ----------------------------------------------------------- diagnose

void cmd_diagnose(const Options& opt, const Sink& sink) {
  const auto file = load_params(opt);
  const ModelChoice m = resolve_family(opt, file);
  const Dataset d = load_data(opt, m);
  std::ostringstream table;
  table << "model,family,frequency,series,n,statistic_d,p_value,loglik\n";
  auto row = [&](const std::string& model, int series, const KsResult& ks, double loglik) {
    table << model << ',' << m.name << ',' << opt.label << ',' << series << ',' << ks.n << ','
          << num(ks.statistic_d) << ',' << num(ks.p_value) << ',' << num(loglik) << '\n';
  };
  if (m.multivariate) {
    const MvTheta theta = multivariate_theta(opt, file, d.values);
    const MvFilterOutput f = filter_mv(d.values, theta);
    for (Eigen::Index i = 0; i < d.values.cols(); ++i) {
      std::vector<double> u(static_cast<std::size_t>(d.values.rows()));
      for (Eigen::Index t = 0; t < d.values.rows(); ++t) {
        u[static_cast<std::size_t>(t)] = specfun::std_normal_cdf(f.eps(t, i));
      }
      row(m.name, static_cast<int>(i + 1), ks_uniform_test(u), f.loglik);
    }
  } else {
    const std::vector<double> y = d.column(0);
    const Theta theta = univariate_theta(opt, m, file, y);
    const double loglik = filter(m.family, y, theta).loglik;
    row(m.name, 1, ks_uniform_test(pit_series(m.family, y, theta)), loglik);
    if (opt.compare_garch) {
      const auto cond = garch_for(m);
      if (!cond) throw UsageError("--compare-garch applies to gauss-vol and t-vol only");
      const auto g = garch_fit(*cond, y);
      log_fit(garch_name(*cond), g);
      row(garch_name(*cond), 1, ks_uniform_test(garch_pit(*cond, y, g.theta_hat)), g.loglik);
    }
  }
  sink.write("diagnose.csv", [&](std::ostream& os) { os << table.str(); });
}

// ----------------------------------------------------------- mc-study

void cmd_mc_study(const Options& opt, const Sink& sink) {
  const auto file = load_params(opt);
  const ModelChoice m = resolve_family(opt, file);
  if (m.multivariate) throw UsageError("mc-study supports univariate families only");
  McStudyConfig c;
  c.family = m.family;
  c.true_theta = file ? theta_from_params(m.family, *file) : default_theta(m.family);
  if (!file) c.true_theta.offset = opt.offset;
  c.lengths = opt.lengths;
  c.replications = opt.reps;
  c.seed = opt.seed;
  spdlog::info("mc-study: {} x {} replications on {} threads", opt.lengths.size(), opt.reps, default_thread_count());
  const McStudyResult r = mc_study(c);
  for (const auto& b : r.blocks) {
    if (b.n_converged < r.replications) {
      spdlog::warn("T={}: {} of {} replications did not converge and were excluded", b.length,
                   r.replications - b.n_converged, r.replications);
    }
  }
  sink.write("mc_study.csv", [&](std::ostream& os) { write_mc_csv(os, r); });
}

// --------------------------------------------------- innovation-curve

void cmd_innovation_curve(const Options& opt, const Sink& sink) {
  const auto file = load_params(opt);
  const ModelChoice m = resolve_family(opt, file);
  if (m.multivariate) throw UsageError("innovation-curve supports univariate families only");
  std::vector<double> shapes{0.0};
  if (m.family == Family::TVol) shapes = opt.nu_list.empty() ? std::vector<double>{5.0, 10.0, 30.0} : opt.nu_list;
  if (m.family == Family::WeibullDur) shapes = opt.k_list.empty() ? std::vector<double>{2.0, 3.0, 4.0} : opt.k_list;
  const bool vol = is_volatility(m.family);
  const double lo = std::isnan(opt.eps_min) ? (vol ? -5.0 : 0.0) : opt.eps_min;
  const double hi = std::isnan(opt.eps_max) ? 5.0 : opt.eps_max;
  if (!(hi > lo) || opt.points < 2) throw UsageError("need --eps-max > --eps-min and --points >= 2");
  sink.write("innovation_curve.csv", [&](std::ostream& os) {
    os << "family,shape,eps,eta\n";
    for (double shape : shapes) {
      const ObsKernel kernel(m.family, ObsParams{shape, opt.offset});
      for (int i = 0; i < opt.points; ++i) {
        double eps = lo + (hi - lo) * i / (opt.points - 1);
        if (!vol && eps <= 0.0) eps = (hi - lo) * 1e-6;
        const double eta = specfun::std_normal_quantile(kernel.score_cdf(eps));
        os << m.name << ',' << num(shape) << ',' << num(eps) << ',' << num(eta) << '\n';
      }
    }
  });
}

// ---------------------------------------------------- volatility-path

void cmd_volatility_path(const Options& opt, const Sink& sink) {
  const auto file = load_params(opt);
  const ModelChoice m = resolve_family(opt, file);
  const Dataset d = load_data(opt, m);
  if (m.multivariate) {
    const MvTheta theta = multivariate_theta(opt, file, d.values);
    const MvFilterOutput f = filter_mv(d.values, theta);
    sink.write("volatility_path.csv", [&](std::ostream& os) {
      os << "t,date,series,y,alpha,sigma\n";
      for (Eigen::Index i = 0; i < d.values.cols(); ++i) {
        for (Eigen::Index t = 0; t < d.values.rows(); ++t) {
          os << t + 1 << ',' << d.dates[static_cast<std::size_t>(t)] << ',' << i + 1 << ',' << num(d.values(t, i))
             << ',' << num(f.alpha(t, i)) << ',' << num(std::exp(0.5 * f.alpha(t, i))) << '\n';
        }
      }
    });
    return;
  }
  const std::vector<double> y = d.column(0);
  const Theta theta = univariate_theta(opt, m, file, y);
  const FilterOutput f = filter(m.family, y, theta);
  const bool vol = is_volatility(m.family);
  sink.write("volatility_path.csv", [&](std::ostream& os) {
    os << "t,date,y,alpha," << (vol ? "sigma" : "expected_duration") << '\n';
    for (std::size_t t = 0; t < y.size(); ++t) {
      const double scale = vol ? std::exp(0.5 * f.alpha[t]) : std::exp(f.alpha[t]);
      os << t + 1 << ',' << d.dates[t] << ',' << num(y[t]) << ',' << num(f.alpha[t]) << ',' << num(scale) << '\n';
    }
  });
}

void setup_logging(std::ostream& err, bool verbose) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("igasc", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(verbose ? spdlog::level::debug : spdlog::level::info);
  spdlog::set_default_logger(logger);
}

int fail(std::ostream& err, int code, const char* kind, const std::string& message) {
  std::string flat = message;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  err << "igasc: error: " << kind << ": " << flat << std::endl;
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Innovation-driven score copula time-series models"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  auto add_family = [&](CLI::App* c) {
    c->add_option("--family", opt.family, "gauss-vol, t-vol, exp-dur, weibull-dur or mv-gauss-vol");
  };
  auto add_data = [&](CLI::App* c) {
    c->add_option("--data", opt.data, "CSV file(s) with a date and a value column")->expected(1, -1);
    c->add_option("--kind", opt.kind, "prices, returns or durations")
        ->check(CLI::IsMember({"prices", "returns", "durations"}));
  };
  auto add_params = [&](CLI::App* c) {
    c->add_option("--theta", opt.theta_path, "Parameter file (key=value)");
    c->add_option("--set", opt.sets, "Override a parameter, key=value");
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--offset", opt.offset, "Offset added to eps^2 in the volatility innovation map")
        ->check(CLI::NonNegativeNumber);
    c->add_option("--out", opt.out_dir, "Directory for output files (default: standard output)");
    c->add_flag("-v,--verbose", opt.verbose, "Debug logging");
  };

  CLI::App* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood fit");
  add_family(fit_cmd);
  add_data(fit_cmd);
  add_params(fit_cmd);
  add_common(fit_cmd);
  fit_cmd->add_flag("--compare-garch", opt.compare_garch, "Also fit the matching GARCH(1,1) model");
  fit_cmd->add_option("--theta-out", opt.theta_out, "Write fitted parameters to this file");

  CLI::App* sim_cmd = app.add_subcommand("simulate", "Simulate a series");
  add_family(sim_cmd);
  add_params(sim_cmd);
  add_common(sim_cmd);
  sim_cmd->add_option("--T", opt.lengths, "Series length")->required();
  sim_cmd->add_option("--seed", opt.seed, "Random seed");
  sim_cmd->add_option("--burn-in", opt.burn_in, "Discarded leading observations");

  CLI::App* fc_cmd = app.add_subcommand("forecast", "Predictive summaries by horizon");
  add_family(fc_cmd);
  add_data(fc_cmd);
  add_params(fc_cmd);
  add_common(fc_cmd);
  fc_cmd->add_option("--horizon", opt.horizons, "Forecast horizons")->delimiter(',');
  fc_cmd->add_option("--nodes", opt.nodes, "Gauss-Hermite nodes")->check(CLI::PositiveNumber);
  fc_cmd->add_option("--seed", opt.seed, "Random seed (multivariate simulation)");
  fc_cmd->add_option("--paths", opt.paths, "Simulated paths (multivariate)")->check(CLI::PositiveNumber);

  CLI::App* diag_cmd = app.add_subcommand("diagnose", "PIT residual KS test");
  add_family(diag_cmd);
  add_data(diag_cmd);
  add_params(diag_cmd);
  add_common(diag_cmd);
  diag_cmd->add_option("--label", opt.label, "Frequency label for the report, e.g. daily");
  diag_cmd->add_flag("--compare-garch", opt.compare_garch, "Also report the matching GARCH(1,1) model");

  CLI::App* mc_cmd = app.add_subcommand("mc-study", "Monte Carlo study of the estimator");
  add_family(mc_cmd);
  add_params(mc_cmd);
  add_common(mc_cmd);
  mc_cmd->add_option("--reps", opt.reps, "Replications per length")->check(CLI::Range(2, 1000000));
  mc_cmd->add_option("--T", opt.lengths, "Series lengths")->delimiter(',')->required();
  mc_cmd->add_option("--seed", opt.seed, "Random seed");

  CLI::App* curve_cmd = app.add_subcommand("innovation-curve", "eta as a function of the standardized observation");
  add_family(curve_cmd);
  add_params(curve_cmd);
  add_common(curve_cmd);
  curve_cmd->add_option("--k", opt.k_list, "Weibull shapes")->delimiter(',');
  curve_cmd->add_option("--nu", opt.nu_list, "Student-t degrees of freedom")->delimiter(',');
  curve_cmd->add_option("--eps-min", opt.eps_min, "Grid start");
  curve_cmd->add_option("--eps-max", opt.eps_max, "Grid end");
  curve_cmd->add_option("--points", opt.points, "Grid size");

  CLI::App* vol_cmd = app.add_subcommand("volatility-path", "Filtered state path");
  add_family(vol_cmd);
  add_data(vol_cmd);
  add_params(vol_cmd);
  add_common(vol_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(err, 2, "usage", e.what());
  }

  setup_logging(err, opt.verbose);
  try {
    const Sink sink(opt, out);
    if (*fit_cmd) cmd_fit(opt, sink);
    if (*sim_cmd) cmd_simulate(opt, sink);
    if (*fc_cmd) cmd_forecast(opt, sink);
    if (*diag_cmd) cmd_diagnose(opt, sink);
    if (*mc_cmd) cmd_mc_study(opt, sink);
    if (*curve_cmd) cmd_innovation_curve(opt, sink);
    if (*vol_cmd) cmd_volatility_path(opt, sink);
  } catch (const UsageError& e) {
    return fail(err, 2, "usage", e.what());
  } catch (const StationarityError& e) {
    return fail(err, 3, "stationarity", e.what());
  } catch (const ObservationError& e) {
    return fail(err, 3, "observation", e.what());
  } catch (const DomainError& e) {
    return fail(err, 3, "domain", e.what());
  } catch (const StudyError& e) {
    return fail(err, 4, "study", e.what());
  } catch (const std::exception& e) {
    return fail(err, 1, "internal", e.what());
  }
  return 0;
}

}  // namespace igasc::cli
