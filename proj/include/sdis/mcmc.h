#pragma once

/// Metropolis-Hastings kernels for the magnified failure density
/// h(u) ∝ I(G(sigma u) <= 0) phi_n(u).
///
/// Each chain performs l transitions from its seed, spends exactly one
/// limit-state evaluation per transition and returns only its final state.

#include <cstddef>
#include <vector>

#include "sdis/gaussian_mixture.h"
#include "sdis/limit_state.h"
#include "sdis/rng.h"
#include "sdis/types.h"

namespace sdis {

/// A point of the chain with its cached value g = G(sigma * u) <= 0.
struct ChainState {
  Vector u;
  double g = 0.0;
};

struct ChainResult {
  ChainState state;
  int accepted = 0;
  int proposed = 0;
  /// True when no proposal was accepted and the seed is returned unchanged.
  bool stuck() const noexcept { return accepted == 0; }
};

/// Independent M-H: proposals drawn from `proposal`, accepted with
/// probability I(G(sigma u') <= 0) min(1, phi(u') pi(u_t) / (phi(u_t) pi(u'))),
/// evaluated in log space.
/// log of phi(u') pi(u_t) / (phi(u_t) pi(u')) from the four log densities.
/// Only differences enter, so common additive constants cancel exactly in
/// exact arithmetic and states far in the tails do not underflow.
inline double imh_log_ratio(double log_phi_cand, double log_pi_cand, double log_phi_cur, double log_pi_cur) {
  return (log_phi_cand - log_phi_cur) - (log_pi_cand - log_pi_cur);
}

ChainResult imh_chain(const LimitState& lsf, double sigma, const ChainState& seed,
                      const GaussianMixture& proposal, int length, Rng& rng);

/// Conditional-sampling M-H: u' = sqrt(1 - beta^2) u_t + beta xi with
/// xi ~ N(0, I); accepted iff G(sigma u') <= 0.
ChainResult csmh_chain(const LimitState& lsf, double sigma, const ChainState& seed, double beta,
                       int length, Rng& rng);

/// Step-size controller for the conditional-sampling kernel.
///
/// After each batch of chains the step is updated as
///   beta <- clamp(beta * exp((acceptance - 0.44) / sqrt(batch)), 1e-3, 0.999)
/// where batch counts completed batches starting at 1.
struct AdaptiveBeta {
  static constexpr double kTargetAcceptance = 0.44;
  static constexpr double kMinBeta = 1e-3;
  static constexpr double kMaxBeta = 0.999;

  double beta = 0.6;
  /// Completed adaptation batches.
  std::size_t batch_index = 0;
  /// Transitions accepted / proposed over all batches so far.
  std::size_t accepted = 0;
  std::size_t proposed = 0;
};

/// One controller update after a batch with the given acceptance rate.
AdaptiveBeta adapt_beta(AdaptiveBeta state, double observed_acceptance);

enum class KernelType { independent, conditional };

struct ChainBatchStats {
  std::size_t accepted = 0;
  std::size_t proposed = 0;
  std::size_t stuck_chains = 0;
};

/// Runs one independent M-H chain per seed. Chain j draws from
/// rng.substream(j); chains may run on `workers` threads with identical
/// results.
std::vector<ChainState> run_imh_chains(const LimitState& lsf, double sigma, const std::vector<ChainState>& seeds,
                                       const GaussianMixture& proposal, int length, const Rng& rng, int workers,
                                       ChainBatchStats* stats = nullptr);

/// Runs one conditional-sampling chain per seed, in consecutive batches of
/// `batch_size` chains that share a beta; `beta` is adapted after every
/// batch. Chain j draws from rng.substream(j).
std::vector<ChainState> run_csmh_chains(const LimitState& lsf, double sigma, const std::vector<ChainState>& seeds,
                                        AdaptiveBeta& beta, std::size_t batch_size, int length, const Rng& rng,
                                        int workers, ChainBatchStats* stats = nullptr);

}  // namespace sdis
