#include <cmath>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "sdis/error.h"
#include "sdis/special_functions.h"
#include "test_support.h"

using namespace sdis;
using sdis::testing::rel_err;

namespace {

// Frozen from a 60-digit mpmath evaluation.
constexpr double kPhiMinus4 = 3.167124183311992125e-5;
constexpr double kPhiMinus3p5 = 2.326290790355250363e-4;
constexpr double kPhiMinus8 = 6.220960574271784124e-16;
constexpr double kPhiMinus10 = 7.619853024160526066e-24;
constexpr double kQ50at100 = 1.178450072097942245e-8;   // Q(50, 100): chi2 n=100, x=200
constexpr double kLogQ5at1000 = -975.5430287171020512;  // log Q(5, 1000): chi2 n=10, x=2000
constexpr double kLogQ500at800 = -68.52249605032105365;  // log Q(500, 800): chi2 n=1000, x=1600
constexpr double kQ250at240 = 0.7323499301459841992;     // Q(250, 240): chi2 n=500, x=480
constexpr double kZ75Squared = 0.4549364231195727519;

double round_sig(double x, int digits) {
  const double scale = std::pow(10.0, digits - 1 - std::floor(std::log10(std::abs(x))));
  return std::round(x * scale) / scale;
}

}  // namespace

TEST_CASE("normal cdf: reference values") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(round_sig(std_normal_cdf(-4.0), 4) == doctest::Approx(3.167e-5).epsilon(1e-12));
  CHECK(round_sig(std_normal_cdf(-3.5), 4) == doctest::Approx(2.326e-4).epsilon(1e-12));
  CHECK(rel_err(std_normal_cdf(-4.0), kPhiMinus4) < 1e-12);
  CHECK(rel_err(std_normal_cdf(-3.5), kPhiMinus3p5) < 1e-12);
}

TEST_CASE("normal cdf: absolute accuracy on [-8, 8] and relative accuracy in the tail") {
  const boost::math::normal oracle;
  double prev = 0.0;
  for (double x = -8.0; x <= 8.0; x += 0.01) {
    const double p = std_normal_cdf(x);
    CHECK(std::abs(p - boost::math::cdf(oracle, x)) <= 1e-14);
    CHECK(p >= prev);
    prev = p;
  }
  CHECK(rel_err(std_normal_cdf(-8.0), kPhiMinus8) <= 1e-10);
  CHECK(rel_err(std_normal_cdf(-10.0), kPhiMinus10) <= 1e-10);
  for (double x = -10.0; x <= -4.0; x += 0.05) {
    CHECK(rel_err(std_normal_cdf(x), boost::math::cdf(oracle, x)) <= 1e-10);
  }
}

TEST_CASE("chi2 upper tail: closed forms and high-precision references") {
  CHECK(chi2_upper_tail(2, 0.0) == 1.0);
  CHECK(rel_err(chi2_upper_tail(2, 50.0), std::exp(-25.0)) < 1e-12);
  CHECK(rel_err(chi2_upper_tail(100, 200.0), kQ50at100) <= 1e-10);
  CHECK(rel_err(chi2_upper_tail(500, 480.0), kQ250at240) <= 1e-10);
  CHECK(rel_err(chi2_upper_tail(1, 1.0), 2.0 * std_normal_cdf(-1.0)) <= 1e-12);
}

TEST_CASE("chi2 log tail: stays accurate far below the double range") {
  CHECK(rel_err(chi2_log_upper_tail(10, 2000.0), kLogQ5at1000) <= 1e-10);
  CHECK(rel_err(chi2_log_upper_tail(1000, 1600.0), kLogQ500at800) <= 1e-10);
  CHECK(chi2_upper_tail(10, 2000.0) == 0.0);  // underflows; the log path does not
  // n = 2: log tail is exactly -x / 2 at any x.
  for (double x : {1e-3, 1.0, 30.0, 700.0, 5000.0, 1e5}) {
    CHECK(rel_err(chi2_log_upper_tail(2, x), -0.5 * x) <= 1e-12);
  }
}

TEST_CASE("chi2 tails agree with an independent incomplete-gamma implementation") {
  for (int n : {1, 2, 3, 5, 10, 37, 100, 300, 1000}) {
    for (double x = 0.01; x < 6.0 * n + 200.0; x *= 1.37) {
      const double oracle = boost::math::gamma_q(0.5 * n, 0.5 * x);
      if (oracle < 1e-300) continue;
      CAPTURE(n);
      CAPTURE(x);
      CHECK(rel_err(chi2_upper_tail(n, x), oracle) <= 1e-10);
      const double lower = boost::math::gamma_p(0.5 * n, 0.5 * x);
      if (lower > 1e-300) CHECK(rel_err(std::exp(chi2_log_cdf(n, x)), lower) <= 1e-10);
    }
  }
}

TEST_CASE("chi2 tail: strictly decreasing, equals one at zero, log and linear agree") {
  for (int n : {1, 2, 7, 100, 1000}) {
    CHECK(chi2_upper_tail(n, 0.0) == 1.0);
    // Q itself rounds to 1 for small x at large n; the log tail resolves it.
    double prev = 1.0;
    double prev_log = 0.0;
    for (double x = 0.05; x < 3.0 * n + 100.0; x *= 1.1) {
      const double q = chi2_upper_tail(n, x);
      const double lq = chi2_log_upper_tail(n, x);
      if (q == 0.0) break;
      CHECK(q <= prev);
      if (lq < 0.0) CHECK(lq < prev_log);
      prev = q;
      prev_log = lq;
      if (q > 1e-250) CHECK(rel_err(std::exp(chi2_log_upper_tail(n, x)), q) <= 1e-12);
    }
  }
}

TEST_CASE("chi2 tail: domain errors") {
  CHECK_THROWS_AS(chi2_upper_tail(2, -1.0), DomainError);
  CHECK_THROWS_AS(chi2_upper_tail(0, 1.0), DomainError);
  CHECK_THROWS_AS(chi2_log_upper_tail(-3, 1.0), DomainError);
}

TEST_CASE("chi2 quantile: closed forms") {
  CHECK(chi2_quantile(2, 1.0 - std::exp(-1.0)) == doctest::Approx(2.0).epsilon(1e-12));
  const double z = boost::math::quantile(boost::math::normal(), 0.75);
  CHECK(rel_err(chi2_quantile(1, 0.5), z * z) <= 1e-10);
  CHECK(rel_err(chi2_quantile(1, 0.5), kZ75Squared) <= 1e-10);
}

TEST_CASE("chi2 quantile: round trip through the upper tail") {
  CHECK(rel_err(chi2_upper_tail(500, chi2_quantile(500, 0.999)), 0.001) <= 1e-9);
  for (int n : {1, 2, 3, 10, 100, 1000}) {
    for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.9, 0.999, 0.999999}) {
      CAPTURE(n);
      CAPTURE(p);
      const double level = 1.0 - p;
      const double x = chi2_quantile(n, level);
      CHECK(rel_err(chi2_upper_tail(n, x), 1.0 - level) <= 1e-9);  // 1 - level is exact
    }
  }
}

TEST_CASE("chi2 upper quantile in log scale inverts tails below 1e-300") {
  for (int n : {1, 2, 10, 1000}) {
    for (double log_tail : {-1e-8, -0.5, -30.0, -800.0, -5000.0}) {
      const double x = chi2_upper_quantile_log(n, log_tail);
      CHECK(rel_err(chi2_log_upper_tail(n, x), log_tail) <= 1e-11);
    }
  }
  CHECK(chi2_upper_quantile_log(5, 0.0) == 0.0);
  CHECK_THROWS_AS(chi2_upper_quantile_log(5, 0.1), DomainError);
}

TEST_CASE("chi2 quantile: domain errors") {
  CHECK_THROWS_AS(chi2_quantile(3, 0.0), DomainError);
  CHECK_THROWS_AS(chi2_quantile(3, 1.0), DomainError);
  CHECK_THROWS_AS(chi2_quantile(3, -0.2), DomainError);
}
