#include "sdis/special_functions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sdis/error.h"

namespace sdis {

namespace {

constexpr double kEps = 1e-17;
constexpr int kMaxTerms = 100000;
constexpr double kTiny = 1e-300;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// log of x^a e^-x / Gamma(a), the common prefactor of both expansions.
double log_prefactor(double a, double x) { return -x + a * std::log(x) - std::lgamma(a); }

/// log P(a, x) by the power series; converges for all x, fast for x < a + 1.
double log_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < kMaxTerms; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return log_prefactor(a, x) + std::log(sum);
}

/// log Q(a, x) by the Legendre continued fraction (modified Lentz), for
/// x >= a + 1.
double log_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return log_prefactor(a, x) + std::log(h);
}

void check_chi2_args(int n, double x) {
  if (n < 1) throw DomainError("chi-square degrees of freedom must be >= 1, got " + std::to_string(n));
  if (!(x >= 0.0)) throw DomainError("chi-square argument must be >= 0, got " + std::to_string(x));
}

/// Safeguarded Newton for a monotone f on [lo, hi] with f(lo) and f(hi) of
/// opposite sign. `eval` returns {f(x), f'(x)}; f is a difference of logs
/// and `scale` the magnitude of the target log, so the stopping rule is a
/// relative one.
template <class Eval>
double bracketed_newton(Eval eval, double lo, double hi, double x, double scale) {
  const double f_tol = 1e-15 * std::max(scale, 1e-300);
  for (int it = 0; it < 300; ++it) {
    auto [f, df] = eval(x);
    if (std::abs(f) <= f_tol) return x;
    // f is decreasing in x for upper tails and increasing for lower tails;
    // `eval` normalizes so that f > 0 means the root lies to the right.
    if (f > 0) lo = x; else hi = x;
    double next = (df != 0.0 && std::isfinite(df)) ? x - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) return next;
    x = next;
  }
  return x;
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double log_gamma_p(double a, double x) {
  if (x <= 0.0) return -kInf;
  if (x < a + 1.0) return log_p_series(a, x);
  return std::log1p(-std::exp(log_q_fraction(a, x)));
}

double log_gamma_q(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return std::log1p(-std::exp(log_p_series(a, x)));
  return log_q_fraction(a, x);
}

double chi2_log_upper_tail(int n, double x) {
  check_chi2_args(n, x);
  return log_gamma_q(0.5 * n, 0.5 * x);
}

double chi2_upper_tail(int n, double x) { return std::exp(chi2_log_upper_tail(n, x)); }

double chi2_log_cdf(int n, double x) {
  check_chi2_args(n, x);
  return log_gamma_p(0.5 * n, 0.5 * x);
}

double chi2_log_pdf(int n, double x) {
  const double a = 0.5 * n;
  return (a - 1.0) * std::log(x) - 0.5 * x - a * std::log(2.0) - std::lgamma(a);
}

double chi2_upper_quantile_log(int n, double log_tail) {
  if (n < 1) throw DomainError("chi-square degrees of freedom must be >= 1");
  if (!(log_tail <= 0.0)) throw DomainError("log tail probability must be <= 0");
  if (log_tail == 0.0) return 0.0;
  double hi = static_cast<double>(n);
  while (chi2_log_upper_tail(n, hi) > log_tail) hi *= 2.0;
  auto eval = [&](double x) {
    const double lq = chi2_log_upper_tail(n, x);
    // f = log Q - target is decreasing; d/dx log Q = -pdf / Q.
    return std::pair{lq - log_tail, -std::exp(chi2_log_pdf(n, x) - lq)};
  };
  return bracketed_newton(eval, 0.0, hi, 0.5 * hi, -log_tail);
}

double chi2_quantile(int n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile probability must lie in (0, 1)");
  if (p > 0.5) return chi2_upper_quantile_log(n, std::log1p(-p));
  const double target = std::log(p);
  double hi = static_cast<double>(n);
  while (chi2_log_cdf(n, hi) < target) hi *= 2.0;
  auto eval = [&](double x) {
    const double lp = chi2_log_cdf(n, x);
    // f = target - log P keeps the "f > 0 means go right" convention.
    return std::pair{target - lp, -std::exp(chi2_log_pdf(n, x) - lp)};
  };
  return bracketed_newton(eval, 0.0, hi, 0.5 * hi, -target);
}

}  // namespace sdis
