#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "doctest.h"
#include "sdis/benchmarks.h"
#include "sdis/error.h"
#include "sdis/line_search.h"
#include "sdis/model_registry.h"
#include "sdis/rng.h"
#include "sdis/sampling.h"

using namespace sdis;

namespace {

Vector diagonal(int n) { return Vector::Constant(n, 1.0 / std::sqrt(double(n))); }

// Number of sign changes of g(rho a) on (0, rho_end], scanned densely.
int sign_changes(const LimitState& lsf, const Vector& a, double rho_end) {
  // Evaluate through a throwaway copy of the model so the scan does not
  // disturb the counter of the model under test.
  auto probe = make_model(lsf.name());
  int changes = 0;
  bool safe = true;
  for (int i = 1; i <= 4000; ++i) {
    const bool now_safe = probe->evaluate(rho_end * i / 4000.0 * a) > 0.0;
    changes += now_safe != safe;
    safe = now_safe;
  }
  return changes;
}

void check_root_contract(const LimitState& lsf, const RootQuery& q, const Root& root, const RootOptions& opt,
                         double g0) {
  // Same point arithmetic as the solver, so endpoint signs reproduce exactly.
  const auto g = [&](double r) { return lsf.evaluate_scaled(q.sigma * r, q.direction); };
  CHECK(g(root.r_safe) > 0.0);
  CHECK(g(root.r_fail) <= 0.0);
  CHECK(root.r_safe < root.r_fail);
  const bool g_small = std::abs(g(root.r)) <= opt.g_tol_scale * (1.0 + std::abs(g0));
  const bool narrow = root.r_fail - root.r_safe <= opt.r_tol * std::max(1.0, root.r);
  CHECK((g_small || narrow));
}

}  // namespace

TEST_CASE("linear limit state: closed-form roots") {
  for (int n : {1, 2, 10, 100}) {
    LinearSum lsf(n);
    CHECK(find_root(lsf, {diagonal(n), 1.0}).r == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(find_root(lsf, {diagonal(n), 3.0}).r == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(find_root(lsf, {diagonal(n), 1.0, 10.0}).r == doctest::Approx(4.0).epsilon(1e-9));
  }
}

TEST_CASE("four_branch: diagonal root") {
  FourBranch lsf;
  const RootQuery q{diagonal(2), 1.0};
  const Root root = find_root(lsf, q);
  CHECK(root.r == doctest::Approx(5.0).epsilon(1e-9));
  check_root_contract(lsf, q, root, {}, 5.0);
}

TEST_CASE("root evaluations are reported and counted") {
  LinearSum lsf(5);
  const auto before = lsf.evaluations();
  const Root root = find_root(lsf, {diagonal(5), 1.0});
  CHECK(root.evaluations > 0);
  CHECK(lsf.evaluations() - before == static_cast<std::uint64_t>(root.evaluations));

  // Known G(0) and G at the hint are not re-evaluated.
  RootQuery q{diagonal(5), 1.0, 6.0, linear_sum(6.0 * diagonal(5), 4.0), 4.0};
  const auto mid = lsf.evaluations();
  const Root hinted = find_root(lsf, q);
  CHECK(lsf.evaluations() - mid == static_cast<std::uint64_t>(hinted.evaluations));
  CHECK(hinted.r == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("find_root is deterministic") {
  TwoRegion lsf;
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Vector a = sample_uniform_direction(2, rng);
    const auto r1 = try_find_root(lsf, {a, 1.0});
    const auto r2 = try_find_root(lsf, {a, 1.0});
    REQUIRE(r1.has_value() == r2.has_value());
    if (r1) CHECK(r1->r == r2->r);
  }
}

TEST_CASE("rescale_root") {
  CHECK(rescale_root(5.0 / 3.0, 3.0, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(rescale_root(2.7, 1.8, 1.8) == 2.7);
  CHECK(rescale_root(1.0, 2.0, 1.5) >= 1.0);
  CHECK_THROWS_AS(rescale_root(1.0, 2.0, 2.5), DomainError);
  CHECK_THROWS_AS(rescale_root(1.0, 2.0, 0.5), DomainError);
  CHECK_THROWS_AS(rescale_root(0.0, 2.0, 1.0), DomainError);
}

TEST_CASE("rescaled roots match a fresh solve at the new magnification") {
  // Failure directions of the magnified problem at sigma = 3, restricted to
  // directions with a single crossing up to the failure point.
  RootOptions wide;
  wide.r_max = 64.0;
  for (const char* id : {"four_branch", "two_region", "oscillator", "linear_sum:n=10", "series_two_sided:n=10"}) {
    CAPTURE(std::string(id));
    auto lsf = make_model(id);
    const int n = lsf->dimension();
    const double g0 = lsf->evaluate(Vector::Zero(n));
    Rng rng(31);
    int tested = 0;
    double worst = 0.0;
    while (tested < 200) {
      const Vector u = sample_std_normal(n, rng);
      if (lsf->evaluate_scaled(3.0, u) > 0.0) continue;
      const double norm = u.norm();
      const Vector a = u / norm;
      if (sign_changes(*lsf, a, 3.0 * norm) != 1) continue;
      ++tested;
      const RootQuery at3{a, 3.0, norm};
      const Root r3 = find_root(*lsf, at3);
      check_root_contract(*lsf, at3, r3, {}, g0);
      const Root r1 = find_root(*lsf, {a, 1.0, 3.0 * norm});
      const double rel = std::abs(rescale_root(r3.r, 3.0, 1.0) - r1.r) / r1.r;
      worst = std::max(worst, rel);
      // The unhinted search finds the same first crossing.
      const Root grown = find_root(*lsf, {a, 1.0}, wide);
      CHECK(std::abs(grown.r - r1.r) / r1.r <= 1e-8);
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("line search errors") {
  FunctionLimitState unsafe(2, [](const Vector& u) { return -1.0 + u[0]; });
  CHECK_THROWS_AS(find_root(unsafe, {diagonal(2), 1.0}), UnsafeOrigin);

  LinearSum lsf(4);
  // Pointing away from the failure half-space: no sign change up to r_max.
  CHECK_THROWS_AS(find_root(lsf, {-diagonal(4), 1.0}), NoRootFound);
  CHECK_FALSE(try_find_root(lsf, {-diagonal(4), 1.0}).has_value());
  // The root at 4 lies beyond a shortened search radius.
  RootOptions short_range;
  short_range.r_max = 3.0;
  CHECK_THROWS_AS(find_root(lsf, {diagonal(4), 1.0}, short_range), NoRootFound);
  CHECK_THROWS_AS(find_root(lsf, {diagonal(3), 1.0}), DimensionMismatch);
}
