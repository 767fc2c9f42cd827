#pragma once

// Special functions and distribution primitives. Everything here is a pure
// function of its arguments and safe to call concurrently.

namespace igasc::specfun {

/// Probabilities handed to quantile functions are clamped to
/// [kProbClamp, 1 - kProbClamp] so that the inverse normal stays finite.
inline constexpr double kProbClamp = 1e-15;

double std_normal_cdf(double x);
/// Upper tail 1 - Phi(x), accurate where Phi(x) rounds to one.
double std_normal_ccdf(double x);
double std_normal_quantile(double p);
double std_normal_logpdf(double x);

/// CDF of the chi-square law with one degree of freedom.
double chi1_cdf(double x);
double chi1_ccdf(double x);

/// CDF of the F(1, nu) law.
double f_1nu_cdf(double x, double nu);
double f_1nu_ccdf(double x, double nu);

/// Student-t CDF with nu degrees of freedom (standard, not unit variance).
double student_t_cdf(double t, double nu);

double log_gamma(double x);
double log_beta(double a, double b);

/// Regularized incomplete beta I_z(a, b).
double reg_inc_beta(double z, double a, double b);

/// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);

/// Upper tail of the chi-square law with `dof` degrees of freedom.
double chi2_ccdf(double x, double dof);

/// A probability together with its complement, each computed directly so
/// that whichever is smaller keeps full relative precision.
struct TailPair {
  double lower;
  double upper;
};

/// Phi^{-1} of a probability given as a TailPair, using the more accurate tail.
double std_normal_quantile(TailPair p);

}  // namespace igasc::specfun
