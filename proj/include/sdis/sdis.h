#pragma once

/// Sequential directional importance sampling.
///
/// The failure probability is written as a product
///
///   Pf = P(sigma_1) * S_1 * ... * S_{k-1},
///
/// where P(sigma) is the failure probability of the magnified limit state
/// G(sigma u), sigma_1 > sigma_2 > ... > sigma_k = 1. P(sigma_1) comes from
/// crude Monte Carlo; every ratio S_i is estimated by directional importance
/// sampling with the directions of the previous level as samples:
///
///   W_i(a) = [1 - F(r_{i+1}(a)^2)] / [1 - F(r_i(a)^2)],  r_{i+1} = r_i sigma_i / sigma_{i+1},
///
/// F being the chi-square CDF with n degrees of freedom. Directions for the
/// next level are produced by resampling (directions by weight, radii from
/// the truncated chi law) followed by short Metropolis-Hastings chains.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sdis/gaussian_mixture.h"
#include "sdis/limit_state.h"
#include "sdis/line_search.h"
#include "sdis/mcmc.h"
#include "sdis/rng.h"
#include "sdis/types.h"

namespace sdis {

struct SdisConfig {
  double sigma1 = 3.0;
  /// Directions (failure samples) per level.
  int n0 = 100;
  /// Transitions per Markov chain; only the last state is kept.
  int chain_length = 5;
  /// Target coefficient of variation of the level weights.
  double delta_target = 1.5;
  KernelType kernel = KernelType::conditional;
  /// Mixture components of the independent M-H proposal.
  int components = 1;
  int max_levels = 50;
  std::uint64_t seed = 0;
  /// Sample cap of the initial Monte Carlo stage.
  std::uint64_t max_initial_samples = 10'000'000;
  /// Truncated-chi radii drawn per resampled direction to fit the mixture.
  int fit_radii_per_direction = 10;
  /// Starting step of the conditional-sampling kernel.
  double initial_beta = 0.6;
  /// Threads for root finding and chains. Results do not depend on it.
  int workers = 1;
  RootOptions root_options;

  /// Throws DomainError on an invalid combination.
  void validate() const;
};

struct InitialStage {
  double p_sigma1 = 0.0;
  /// Failure samples of G(sigma1 u) in draw order.
  std::vector<ChainState> failures;
  /// Standard-normal draws evaluated until the n0-th failure.
  std::uint64_t samples = 0;
};

/// Draws standard-normal batches of 256 and evaluates G(sigma1 u) until n0
/// failures are collected. p = n0 / N with N the draw index of the n0-th
/// failure. Throws BudgetExceeded past config.max_initial_samples.
InitialStage initial_stage(const LimitState& lsf, const SdisConfig& config, Rng& rng);

struct LevelWeights {
  std::vector<double> log_weights;
  std::vector<double> weights;
  double mean = 0.0;
  /// Sample CV of the weights (1 / (N - 1) variance).
  double cv = 0.0;
};

/// Weights of roots found at `sigma` when the next level uses
/// `sigma_candidate`, computed from chi-square log tails.
LevelWeights weights_for_sigma(std::span<const double> roots, double sigma, double sigma_candidate, int n);

/// Next magnification in [1, sigma]: exactly 1 when the weight CV at 1 does
/// not exceed delta_target, otherwise the bisection solution (to 1e-6) of
/// cv(sigma') = delta_target on the side where cv <= delta_target. Uses no
/// limit-state evaluations.
double select_sigma(std::span<const double> roots, double sigma, double delta_target, int n);

/// One level of the estimator: directions sampled from the level density at
/// `sigma`, their roots, and the weights towards `sigma_next`.
struct DirectionalLevel {
  double sigma = 1.0;
  double sigma_next = 1.0;
  std::vector<Vector> directions;
  std::vector<double> roots;
  /// log(1 - F(r^2)) at each root.
  std::vector<double> log_tails;
  std::vector<double> log_weights;
  std::vector<double> weights;
  double s_hat = 1.0;
  double delta_w = 0.0;

  // Diagnostics of the move step that produced the next level.
  std::size_t resample_fallbacks = 0;
  double acceptance_rate = 0.0;
  std::size_t stuck_chains = 0;
};

struct ResampledSeeds {
  std::vector<ChainState> seeds;
  /// Index of the level direction each seed was drawn from.
  std::vector<std::size_t> parents;
  /// Truncation radius r_{i+1}(a) of each seed's direction.
  std::vector<double> radii_min;
  /// Seeds that needed the fallback point just beyond the root.
  std::size_t fallbacks = 0;
};

/// Multinomial resampling of directions by weight, then a truncated-chi
/// radius beyond the rescaled root. Each seed is validated with one
/// evaluation of G(sigma_next u); a violating radius is redrawn up to five
/// times before falling back to the point just beyond the root.
/// Throws AllWeightsZero when no weight is positive.
ResampledSeeds resample_seeds(const LimitState& lsf, const DirectionalLevel& level, int count, Rng& rng);

struct SdisResult {
  double pf = 0.0;
  double p_sigma1 = 0.0;
  std::uint64_t initial_samples = 0;
  int n0 = 0;
  std::vector<DirectionalLevel> levels;
  double cv = 0.0;
  std::uint64_t evaluations = 0;

  /// Number of magnification factors k (levels.size() + 1).
  int level_count() const noexcept { return static_cast<int>(levels.size()) + 1; }
};

/// Runs the complete estimator. Throws UnsafeOrigin, BudgetExceeded or
/// MaxLevelsExceeded.
SdisResult run_sdis(const LimitState& lsf, const SdisConfig& config);

/// sqrt(cv(P_sigma1)^2 + sum_i delta_W_i^2 / n0), with
/// cv(P_sigma1)^2 = (1 - p) / (N p). Neglects correlation between samples
/// and therefore tends to underestimate the true CV.
double estimate_cv(const SdisResult& result);

/// Largest per-level weight CV that keeps the estimator CV below epsilon
/// with `ratio_levels` = k - 1 ratio estimates. Diagnostic only; NaN when
/// epsilon does not exceed cv_p_sigma1.
double weight_cv_bound(double epsilon, double cv_p_sigma1, int n0, int ratio_levels);

}  // namespace sdis
