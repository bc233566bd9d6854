#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include "doctest.h"
#include "sdis/benchmarks.h"
#include "sdis/error.h"
#include "sdis/model_registry.h"
#include "sdis/rng.h"
#include "sdis/sampling.h"
#include "sdis/special_functions.h"

using namespace sdis;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("four_branch") {
  CHECK(four_branch(vec({0.0, 0.0})) == doctest::Approx(5.0).epsilon(1e-15));
  const double t = 5.0;
  CHECK(std::abs(four_branch(vec({t / std::sqrt(2.0), t / std::sqrt(2.0)}))) < 1e-14);
  // Along the diagonal only the first parabola is active: g = 5 - t.
  for (double s : {0.5, 2.0, 7.5}) {
    CHECK(four_branch(vec({s / std::sqrt(2.0), s / std::sqrt(2.0)})) == doctest::Approx(5.0 - s));
  }
  CHECK_THROWS_AS(four_branch(vec({1.0, 2.0, 3.0})), DimensionMismatch);
}

TEST_CASE("two_region") {
  CHECK(two_region(vec({0.0, 0.0})) == doctest::Approx(5.5).epsilon(1e-15));
  const double t = 6.2;
  CHECK(std::abs(two_region(vec({-t / std::sqrt(2.0), -t / std::sqrt(2.0)}))) < 1e-14);
  CHECK_THROWS_AS(two_region(vec({1.0})), DimensionMismatch);
}

TEST_CASE("oscillator") {
  const double w0 = std::sqrt(1.1);
  const double expected = 1.5 - std::abs(0.6 / 1.1 * std::sin(0.5 * w0));
  CHECK(oscillator(Vector::Zero(6)) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(oscillator(Vector::Zero(6)) == doctest::Approx(1.226892245610965608).epsilon(1e-14));
  // F1 = 0.3 - 1.5 * 0.2 = 0 removes the load term.
  CHECK(oscillator(vec({0, 0, 0, 0, -1.5, 0})) == 1.5);
  CHECK_THROWS_AS(oscillator(Vector::Zero(5)), DimensionMismatch);
}

TEST_CASE("oscillator: leaving the physical domain is a counted failure") {
  Oscillator model;
  // M = 1 - 25 * 0.05 < 0.
  const double g = model.evaluate(vec({-25, 0, 0, 0, 0, 0}));
  CHECK(std::isinf(g));
  CHECK(g < 0.0);
  CHECK(model.domain_faults() == 1);
  CHECK(model.evaluations() == 1);
}

TEST_CASE("linear_sum and series_two_sided") {
  for (int n : {1, 2, 10, 100}) {
    CHECK(linear_sum(Vector::Zero(n), 4.0) == 4.0);
    CHECK(series_two_sided(Vector::Zero(n), 4.0) == 4.0);
    const Vector boundary = Vector::Constant(n, 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(linear_sum(boundary, 4.0)) < 1e-13);
    CHECK(std::abs(series_two_sided(boundary, 4.0)) < 1e-13);
    CHECK(std::abs(series_two_sided(-boundary, 4.0)) < 1e-13);
  }
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vector u = sample_std_normal(7, rng);
    CHECK(series_two_sided(u, 3.0) == series_two_sided(-u, 3.0));
  }
  CHECK(std_normal_cdf(-4.0) == doctest::Approx(3.167e-5).epsilon(1e-3));
  CHECK(2.0 * std_normal_cdf(-4.0) == doctest::Approx(6.334e-5).epsilon(1e-3));
  CHECK_THROWS_AS(linear_sum(Vector(), 4.0), DimensionMismatch);
}

TEST_CASE("linear models are invariant under permutations") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    Vector u = sample_std_normal(12, rng);
    const double g1 = linear_sum(u, 4.0);
    const double g2 = series_two_sided(u, 4.0);
    std::vector<double> buf(u.data(), u.data() + u.size());
    std::shuffle(buf.begin(), buf.end(), rng.engine());
    const Vector p = Eigen::Map<const Vector>(buf.data(), u.size());
    CHECK(linear_sum(p, 4.0) == doctest::Approx(g1).epsilon(1e-14));
    CHECK(series_two_sided(p, 4.0) == doctest::Approx(g2).epsilon(1e-14));
  }
}

TEST_CASE("every registered benchmark has a safe origin") {
  for (const char* id : {"four_branch", "two_region", "oscillator", "linear_sum:n=10", "linear_sum:n=100:beta=3.5",
                         "series_two_sided:n=100"}) {
    auto model = make_model(id);
    CHECK(model->evaluate(Vector::Zero(model->dimension())) > 0.0);
  }
}

TEST_CASE("evaluation counter counts every call exactly, across threads") {
  LinearSum model(3);
  const Vector u = Vector::Ones(3);
  for (int i = 0; i < 17; ++i) model.evaluate(u);
  CHECK(model.evaluations() == 17);
  model.evaluate_scaled(2.0, u);
  CHECK(model.evaluations() == 18);
  CHECK_THROWS_AS(model.evaluate(Vector::Ones(4)), DimensionMismatch);

  FunctionLimitState counted(2, [](const Vector& v) { return 1.0 - v[0]; });
  {
    std::vector<std::jthread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&] {
        for (int i = 0; i < 25000; ++i) counted.evaluate(Vector::Zero(2));
      });
    }
  }
  CHECK(counted.evaluations() == 100000);
}

TEST_CASE("model registry") {
  CHECK(make_model("four_branch")->dimension() == 2);
  CHECK(make_model("oscillator")->dimension() == 6);
  auto lin = make_model("linear_sum:n=100:beta=3.5");
  CHECK(lin->dimension() == 100);
  CHECK(lin->evaluate(Vector::Zero(100)) == 3.5);
  CHECK(make_model("series_two_sided")->dimension() == 10);
  CHECK(ModelId::parse("linear_sum:beta=4:n=10").canonical() == ModelId::parse("linear_sum").canonical());

  CHECK(*reference_pf("four_branch") == 1.058e-5);
  CHECK(*reference_pf("two_region") == 1.10e-8);
  CHECK(*reference_pf("oscillator") == 6.43e-6);
  CHECK(*reference_pf("linear_sum:n=100:beta=3.5") == doctest::Approx(2.326290790355250e-4).epsilon(1e-12));
  CHECK(*reference_pf("series_two_sided:n=10:beta=4") == doctest::Approx(6.334248366623984e-5).epsilon(1e-12));

  CHECK_THROWS_AS(make_model("nope"), ConfigError);
  CHECK_THROWS_AS(make_model("linear_sum:n=0"), ConfigError);
  CHECK_THROWS_AS(make_model("linear_sum:n=abc"), ConfigError);
  CHECK_THROWS_AS(make_model("linear_sum:gamma=2"), ConfigError);
  CHECK_THROWS_AS(make_model("four_branch:n=3"), ConfigError);
  CHECK(registered_models().size() == 5);
}
