#include "sdis/baselines.h"

#include <cmath>
#include <limits>

#include "sdis/error.h"
#include "sdis/sampling.h"
#include "sdis/special_functions.h"

namespace sdis {

Estimate run_mcs(const LimitState& lsf, std::size_t samples, Rng& rng) {
  if (samples < 1) throw DomainError("run_mcs: need at least one sample");
  const std::uint64_t before = lsf.evaluations();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (lsf.evaluate(sample_std_normal(lsf.dimension(), rng)) <= 0.0) ++failures;
  }
  Estimate est;
  est.pf = static_cast<double>(failures) / static_cast<double>(samples);
  est.cv = failures == 0 ? std::numeric_limits<double>::infinity()
                         : std::sqrt((1.0 - est.pf) / (static_cast<double>(samples) * est.pf));
  est.evaluations = lsf.evaluations() - before;
  return est;
}

Estimate run_ds(const LimitState& lsf, std::size_t directions, Rng& rng, const RootOptions& options) {
  if (directions < 2) throw DomainError("run_ds: need at least two directions");
  const std::uint64_t before = lsf.evaluations();
  const int n = lsf.dimension();
  const double g0 = lsf.evaluate(Vector::Zero(n));
  if (!(g0 > 0.0)) throw UnsafeOrigin("run_ds: G(0) is not safe");

  // Welford accumulation of the per-direction tail terms.
  double mean = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < directions; ++j) {
    RootQuery q{sample_uniform_direction(n, rng), 1.0, std::nullopt, std::nullopt, g0};
    const auto root = try_find_root(lsf, q, options);
    const double term = root ? chi2_upper_tail(n, root->r * root->r) : 0.0;
    const double delta = term - mean;
    mean += delta / static_cast<double>(j + 1);
    m2 += delta * (term - mean);
  }
  const double count = static_cast<double>(directions);
  Estimate est;
  est.pf = mean;
  const double var = m2 / (count - 1.0);
  est.cv = mean > 0.0 ? std::sqrt(var / count) / mean : std::numeric_limits<double>::infinity();
  est.evaluations = lsf.evaluations() - before;
  return est;
}

}  // namespace sdis
