#include "igasc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace igasc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Counted {
 public:
  explicit Counted(const Objective& f) : f_(f) {}

  double operator()(std::span<const double> x) {
    ++evals;
    try {
      const double v = f_(x);
      return std::isfinite(v) ? v : kInf;
    } catch (const std::exception&) {
      return kInf;
    }
  }

  int evals = 0;

 private:
  const Objective& f_;
};

OptimResult run_nelder_mead(Counted& f, std::vector<double> x0, const OptimOptions& opt) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(std::max<std::size_t>(n, 1));
  // Adaptive coefficients (Gao and Han).
  const double rho = 1.0;
  const double chi = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 0.5 / dn;
  const double sigma = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.simplex_step;
  const int start_evals = f.evals;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  OptimResult res;
  auto point = [&](const std::vector<double>& base, double coef, std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (base[j] - centroid[j]);
  };

  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n > 0 ? n - 1 : 0];

    double x_spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x_spread = std::max(x_spread, std::fabs(pts[i][j] - pts[best][j]));
    }
    const double f_spread = vals[worst] - vals[best];
    if (std::isfinite(vals[best]) && x_spread <= opt.x_tol && f_spread <= opt.f_tol) {
      res.converged = true;
      break;
    }
    if (f.evals - start_evals >= opt.max_evals) break;
    ++res.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / dn;
    }
    point(pts[worst], -rho, xr);
    const double fr = f(xr);
    if (fr < vals[best]) {
      point(pts[worst], -rho * chi, xe);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    // Contraction: outside if the reflected point improved on the worst.
    const bool outside = fr < vals[worst];
    point(outside ? xr : pts[worst], gamma, xc);
    const double fc = f(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[best][j] + sigma * (pts[i][j] - pts[best][j]);
      vals[i] = f(pts[i]);
    }
  }
  const auto best_it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(best_it - vals.begin())];
  res.value = *best_it;
  return res;
}

Eigen::VectorXd gradient(Counted& f, const std::vector<double>& x) {
  const std::size_t n = x.size();
  Eigen::VectorXd g(n);
  std::vector<double> xp = x;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = 1e-5 * std::max(1.0, std::fabs(x[i]));
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    g(static_cast<Eigen::Index>(i)) = (fp - fm) / (2.0 * h);
  }
  return g;
}

// BFGS with finite-difference gradients and Armijo backtracking.
// Converged when the gradient is at the finite-difference noise floor, or
// when a step moves x by < x_tol and f by < f_tol with a gradient below
// kStationaryGrad * max(1, |f| / 1000). Rounding in f grows with |f|, which
// bounds the attainable gradient. A failed line search resets the metric once.
constexpr double kStationaryGrad = 1e-4;
constexpr int kMaxStalls = 3;

OptimResult bfgs_polish(Counted& f, std::vector<double> x, double fx, const OptimOptions& opt) {
  const std::size_t n = x.size();
  const auto en = static_cast<Eigen::Index>(n);
  OptimResult res;
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(en, en);
  Eigen::VectorXd g = gradient(f, x);
  const int start_evals = f.evals;
  const double g_tol = 1e-6 * std::max(1.0, 1e-3 * std::fabs(fx));
  const double g_stat = kStationaryGrad * std::max(1.0, 1e-3 * std::fabs(fx));
  bool fresh_metric = true;
  int stalls = 0;
  for (int it = 0; it < 500 && f.evals - start_evals < opt.max_evals; ++it) {
    ++res.iterations;
    if (!g.allFinite()) break;
    if (g.lpNorm<Eigen::Infinity>() < g_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = -h_inv * g;
    if (dir.dot(g) >= 0.0) {
      h_inv.setIdentity();
      dir = -g;
    }
    double step = 1.0;
    std::vector<double> xn(n);
    double fn = kInf;
    const double slope = dir.dot(g);
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t j = 0; j < n; ++j) xn[j] = x[j] + step * dir(static_cast<Eigen::Index>(j));
      fn = f(xn);
      if (fn <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Retry once along the gradient before giving up.
      if (!fresh_metric) {
        h_inv.setIdentity();
        fresh_metric = true;
        continue;
      }
      // No descent at machine precision: accept as converged when the
      // gradient is small relative to the objective.
      res.converged = g.lpNorm<Eigen::Infinity>() < g_stat;
      break;
    }
    fresh_metric = false;
    double dx = 0.0;
    for (std::size_t j = 0; j < n; ++j) dx = std::max(dx, std::fabs(xn[j] - x[j]));
    const double df = fx - fn;
    const Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(xn.data(), en) -
                              Eigen::Map<const Eigen::VectorXd>(x.data(), en);
    x = xn;
    fx = fn;
    const Eigen::VectorXd gn = gradient(f, x);
    if (dx < opt.x_tol && df < opt.f_tol) {
      if (gn.lpNorm<Eigen::Infinity>() < g_stat) {
        res.converged = true;
        break;
      }
      if (++stalls >= kMaxStalls) break;
    } else {
      stalls = 0;
    }
    const Eigen::VectorXd yv = gn - g;
    g = gn;
    const double sy = s.dot(yv);
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      const double r = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(en, en);
      h_inv = (id - r * s * yv.transpose()) * h_inv * (id - r * yv * s.transpose()) + r * s * s.transpose();
    }
  }
  res.x = x;
  res.value = fx;
  return res;
}

}  // namespace

OptimResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimOptions& options) {
  Counted counted(f);
  OptimResult r = run_nelder_mead(counted, std::move(x0), options);
  r.evals = counted.evals;
  return r;
}

OptimResult minimize(const Objective& f, std::vector<double> x0, const OptimOptions& options) {
  Counted counted(f);
  // Coarser simplex stages; the polish enforces the final tolerances.
  OptimOptions coarse = options;
  if (options.polish) {
    coarse.x_tol = std::max(options.x_tol, 1e-5);
    coarse.f_tol = std::max(options.f_tol, 1e-8);
  }
  OptimResult first = run_nelder_mead(counted, std::move(x0), coarse);
  OptimOptions restart = coarse;
  restart.simplex_step = 0.1 * options.simplex_step;
  OptimResult second = run_nelder_mead(counted, first.x, restart);
  if (first.value < second.value) second.x = first.x, second.value = first.value;

  OptimResult out = second;
  out.iterations = first.iterations + second.iterations;
  out.converged = first.converged && second.converged;
  if (options.polish && std::isfinite(second.value)) {
    OptimResult polished = bfgs_polish(counted, second.x, second.value, options);
    out.iterations += polished.iterations;
    if (polished.value <= second.value) {
      out.x = polished.x;
      out.value = polished.value;
    }
    out.converged = second.converged && polished.converged;
  }
  out.evals = counted.evals;
  return out;
}

Eigen::VectorXd fd_gradient(const Objective& f, std::span<const double> x) {
  Counted counted(f);
  return gradient(counted, std::vector<double>(x.begin(), x.end()));
}

Eigen::MatrixXd fd_hessian(const Objective& f, std::span<const double> x) {
  const std::size_t n = x.size();
  const auto en = static_cast<Eigen::Index>(n);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = 1e-4 * std::max(1.0, std::fabs(x[i]));
  std::vector<double> xp(x.begin(), x.end());
  const double f0 = f(xp);
  Eigen::MatrixXd hess(en, en);
  for (std::size_t i = 0; i < n; ++i) {
    xp[i] = x[i] + h[i];
    const double fp = f(xp);
    xp[i] = x[i] - h[i];
    const double fm = f(xp);
    xp[i] = x[i];
    hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      auto eval = [&](double si, double sj) {
        xp[i] = x[i] + si * h[i];
        xp[j] = x[j] + sj * h[j];
        const double v = f(xp);
        xp[i] = x[i];
        xp[j] = x[j];
        return v;
      };
      const double v = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * h[i] * h[j]);
      hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      hess(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return hess;
}

Eigen::MatrixXd delta_method(const std::function<std::vector<double>(std::span<const double>)>& map,
                             std::span<const double> x, const Eigen::MatrixXd& cov) {
  const std::size_t n = x.size();
  std::vector<double> xp(x.begin(), x.end());
  const std::size_t m = map(xp).size();
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double h = 1e-6 * std::max(1.0, std::fabs(x[i]));
    xp[i] = x[i] + h;
    const auto fp = map(xp);
    xp[i] = x[i] - h;
    const auto fm = map(xp);
    xp[i] = x[i];
    for (std::size_t r = 0; r < m; ++r) {
      jac(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = (fp[r] - fm[r]) / (2.0 * h);
    }
  }
  return jac * cov * jac.transpose();
}

std::optional<Eigen::MatrixXd> spd_inverse(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) return std::nullopt;
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (m + m.transpose()));
  if (llt.info() != Eigen::Success) return std::nullopt;
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  if (!inv.allFinite() || (inv.diagonal().array() <= 0.0).any()) return std::nullopt;
  return inv;
}

}  // namespace igasc
