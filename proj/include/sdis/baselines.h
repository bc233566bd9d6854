#pragma once

/// Crude Monte Carlo and directional sampling estimators.

#include <cstddef>
#include <cstdint>

#include "sdis/limit_state.h"
#include "sdis/line_search.h"
#include "sdis/rng.h"

namespace sdis {

struct Estimate {
  double pf = 0.0;
  /// Estimated coefficient of variation; +inf when pf is zero.
  double cv = 0.0;
  std::uint64_t evaluations = 0;
};

/// Fraction of N standard-normal samples with G <= 0, with
/// cv = sqrt((1 - pf) / (N pf)).
Estimate run_mcs(const LimitState& lsf, std::size_t samples, Rng& rng);

/// Mean over N uniform directions of the chi-square tail beyond each
/// directional root; safe directions contribute zero. The cv comes from the
/// sample variance of the per-direction terms. Throws UnsafeOrigin.
Estimate run_ds(const LimitState& lsf, std::size_t directions, Rng& rng, const RootOptions& options = {});

}  // namespace sdis
