#pragma once

/// Normal and chi-square distribution functions.
///
/// Chi-square tails are evaluated through the regularized incomplete gamma
/// functions P(a, x) and Q(a, x) = 1 - P(a, x) with a = n/2 and x = r^2/2.
/// Every routine has a log-scale code path so tails far below the smallest
/// representable double (radii beyond ~40 at n = 1000) stay usable.

namespace sdis {

/// Standard normal CDF.
double std_normal_cdf(double x);

/// log P(a, x), the regularized lower incomplete gamma function.
double log_gamma_p(double a, double x);
/// log Q(a, x), the regularized upper incomplete gamma function.
double log_gamma_q(double a, double x);

/// 1 - F(x) for the chi-square distribution with n degrees of freedom.
/// Throws DomainError if n < 1 or x < 0.
double chi2_upper_tail(int n, double x);
/// log(1 - F(x)); finite even where chi2_upper_tail underflows to zero.
double chi2_log_upper_tail(int n, double x);
/// log F(x).
double chi2_log_cdf(int n, double x);
/// log of the chi-square density at x > 0.
double chi2_log_pdf(int n, double x);

/// Lower quantile: the x with F(x) = p, for p in (0, 1).
double chi2_quantile(int n, double p);
/// Upper quantile in log scale: the x with log(1 - F(x)) = log_tail,
/// for log_tail <= 0. Works for tails far below 1e-300.
double chi2_upper_quantile_log(int n, double log_tail);

}  // namespace sdis
