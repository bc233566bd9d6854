#include "sdis/sdis.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>

#include "sdis/error.h"
#include "sdis/parallel.h"
#include "sdis/sampling.h"
#include "sdis/special_functions.h"

namespace sdis {

namespace {

constexpr std::size_t kInitialBatch = 256;
constexpr int kRadiusRedraws = 5;
constexpr int kMaxDirectionDraws = 100;
constexpr double kSigmaTol = 1e-6;

// Sub-stream ids below the run seed and below each level.
enum : std::uint64_t { kStreamInitial = 0 };
enum : std::uint64_t { kStreamResample = 0, kStreamEnrich = 1, kStreamFit = 2, kStreamChains = 3 };

std::vector<double> log_tails_of(std::span<const double> roots, int n) {
  std::vector<double> out(roots.size());
  for (std::size_t j = 0; j < roots.size(); ++j) out[j] = chi2_log_upper_tail(n, roots[j] * roots[j]);
  return out;
}

LevelWeights weights_from_tails(std::span<const double> roots, std::span<const double> log_tails, double sigma,
                                double sigma_candidate, int n) {
  const std::size_t count = roots.size();
  LevelWeights w;
  w.log_weights.resize(count);
  w.weights.resize(count);
  const double scale = sigma / sigma_candidate;
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < count; ++j) {
    const double r = roots[j] * scale;
    w.log_weights[j] = std::min(0.0, chi2_log_upper_tail(n, r * r) - log_tails[j]);
    w.weights[j] = std::exp(w.log_weights[j]);
    max_log = std::max(max_log, w.log_weights[j]);
  }
  if (count == 0) return w;
  w.mean = std::accumulate(w.weights.begin(), w.weights.end(), 0.0) / static_cast<double>(count);
  if (!std::isfinite(max_log)) {
    w.cv = std::numeric_limits<double>::infinity();
    return w;
  }
  if (count < 2) return w;
  // The CV is scale free; evaluate it on weights relative to the largest so
  // that it survives underflow of the absolute weights.
  double mean = 0.0;
  std::vector<double> rel(count);
  for (std::size_t j = 0; j < count; ++j) {
    rel[j] = std::exp(w.log_weights[j] - max_log);
    mean += rel[j];
  }
  mean /= static_cast<double>(count);
  double ss = 0.0;
  for (double x : rel) ss += (x - mean) * (x - mean);
  w.cv = std::sqrt(ss / static_cast<double>(count - 1)) / mean;
  return w;
}

double select_from_tails(std::span<const double> roots, std::span<const double> log_tails, double sigma,
                         double delta_target, int n) {
  auto cv_at = [&](double s) { return weights_from_tails(roots, log_tails, sigma, s, n).cv; };
  if (sigma <= 1.0 || cv_at(1.0) <= delta_target) return 1.0;
  double lo = 1.0, hi = sigma;
  while (hi - lo > kSigmaTol) {
    const double mid = 0.5 * (lo + hi);
    if (cv_at(mid) > delta_target) lo = mid; else hi = mid;
  }
  // A crossing within the tolerance of sigma itself would stall the sequence.
  return hi < sigma ? hi : lo;
}

void check_roots(std::span<const double> roots) {
  for (double r : roots) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("level roots must be finite and positive");
  }
}

}  // namespace

void SdisConfig::validate() const {
  if (!(sigma1 >= 1.0)) throw DomainError("sigma1 must be >= 1");
  if (n0 < 2) throw DomainError("n0 must be >= 2");
  if (chain_length < 1) throw DomainError("chain length must be >= 1");
  if (!(delta_target > 0.0)) throw DomainError("delta_target must be > 0");
  if (components < 1) throw DomainError("mixture components must be >= 1");
  if (max_levels < 1) throw DomainError("max_levels must be >= 1");
  if (fit_radii_per_direction < 1) throw DomainError("fit radii per direction must be >= 1");
  if (!(initial_beta > 0.0 && initial_beta < 1.0)) throw DomainError("initial beta must lie in (0, 1)");
  if (max_initial_samples < static_cast<std::uint64_t>(n0)) throw DomainError("sample cap below n0");
}

InitialStage initial_stage(const LimitState& lsf, const SdisConfig& config, Rng& rng) {
  config.validate();
  const int n = lsf.dimension();
  InitialStage out;
  out.failures.reserve(config.n0);
  std::vector<Vector> batch(kInitialBatch);
  while (static_cast<int>(out.failures.size()) < config.n0) {
    for (auto& u : batch) u = sample_std_normal(n, rng);
    for (const auto& u : batch) {
      if (out.samples >= config.max_initial_samples) {
        throw BudgetExceeded("initial stage: " + std::to_string(out.failures.size()) + " of " +
                             std::to_string(config.n0) + " failures after " + std::to_string(out.samples) +
                             " samples; sigma1 is too small for this problem");
      }
      ++out.samples;
      const double g = lsf.evaluate_scaled(config.sigma1, u);
      if (g <= 0.0) {
        out.failures.push_back({u, g});
        if (static_cast<int>(out.failures.size()) == config.n0) break;
      }
    }
  }
  out.p_sigma1 = static_cast<double>(config.n0) / static_cast<double>(out.samples);
  return out;
}

LevelWeights weights_for_sigma(std::span<const double> roots, double sigma, double sigma_candidate, int n) {
  if (!(sigma_candidate >= 1.0) || sigma_candidate > sigma) {
    throw DomainError("weights_for_sigma: need 1 <= sigma_candidate <= sigma");
  }
  check_roots(roots);
  const auto tails = log_tails_of(roots, n);
  return weights_from_tails(roots, tails, sigma, sigma_candidate, n);
}

double select_sigma(std::span<const double> roots, double sigma, double delta_target, int n) {
  check_roots(roots);
  const auto tails = log_tails_of(roots, n);
  return select_from_tails(roots, tails, sigma, delta_target, n);
}

ResampledSeeds resample_seeds(const LimitState& lsf, const DirectionalLevel& level, int count, Rng& rng) {
  const std::size_t m = level.log_weights.size();
  double max_log = -std::numeric_limits<double>::infinity();
  for (double lw : level.log_weights) max_log = std::max(max_log, lw);
  if (m == 0 || !std::isfinite(max_log)) throw AllWeightsZero("resample: every level weight is zero");

  std::vector<double> cumulative(m);
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    total += std::exp(level.log_weights[j] - max_log);
    cumulative[j] = total;
  }
  auto draw_parent = [&] {
    const double x = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), m - 1);
  };

  const int n = lsf.dimension();
  ResampledSeeds out;
  out.seeds.reserve(count);
  for (int s = 0; s < count; ++s) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxDirectionDraws && !placed; ++attempt) {
      const std::size_t parent = draw_parent();
      const Vector& a = level.directions[parent];
      const double r_min = rescale_root(level.roots[parent], level.sigma, level.sigma_next);
      for (int t = 0; t <= kRadiusRedraws && !placed; ++t) {
        Vector u = sample_truncated_chi(n, r_min, rng) * a;
        const double g = lsf.evaluate_scaled(level.sigma_next, u);
        if (g <= 0.0) {
          out.seeds.push_back({std::move(u), g});
          placed = true;
        }
      }
      if (!placed) {
        // Several crossings along this direction; take the point just beyond
        // the first one.
        Vector u = (r_min * (1.0 + 1e-6)) * a;
        const double g = lsf.evaluate_scaled(level.sigma_next, u);
        if (g <= 0.0) {
          out.seeds.push_back({std::move(u), g});
          ++out.fallbacks;
          placed = true;
        }
      }
      if (placed) {
        out.parents.push_back(parent);
        out.radii_min.push_back(r_min);
      }
    }
    if (!placed) throw AllWeightsZero("resample: no failing seed found after repeated direction draws");
  }
  return out;
}

double estimate_cv(const SdisResult& result) {
  const double p = result.p_sigma1;
  const double n = static_cast<double>(result.initial_samples);
  double var = (p > 0.0 && n > 0.0) ? (1.0 - p) / (n * p) : std::numeric_limits<double>::infinity();
  for (const auto& level : result.levels) var += level.delta_w * level.delta_w / result.n0;
  return std::sqrt(var);
}

double weight_cv_bound(double epsilon, double cv_p_sigma1, int n0, int ratio_levels) {
  const double slack = epsilon * epsilon - cv_p_sigma1 * cv_p_sigma1;
  if (!(slack > 0.0) || ratio_levels < 1) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(slack * n0 / ratio_levels);
}

SdisResult run_sdis(const LimitState& lsf, const SdisConfig& config) {
  config.validate();
  const std::uint64_t before = lsf.evaluations();
  const int n = lsf.dimension();
  const Rng run_rng(config.seed);

  const double g0 = lsf.evaluate(Vector::Zero(n));
  if (!(g0 > 0.0)) throw UnsafeOrigin("run_sdis: G(0) = " + std::to_string(g0) + " is not safe");

  Rng init_rng = run_rng.substream(kStreamInitial);
  InitialStage init = initial_stage(lsf, config, init_rng);

  SdisResult result;
  result.p_sigma1 = init.p_sigma1;
  result.initial_samples = init.samples;
  result.n0 = config.n0;

  std::vector<ChainState> states = std::move(init.failures);
  double sigma = config.sigma1;
  AdaptiveBeta beta;
  beta.beta = config.initial_beta;
  const std::size_t batch = std::max(1, config.n0 / 10);

  for (int level_index = 1; sigma > 1.0; ++level_index) {
    if (level_index > config.max_levels) {
      throw MaxLevelsExceeded("run_sdis: sigma = " + std::to_string(sigma) + " after " +
                              std::to_string(config.max_levels) + " levels");
    }
    DirectionalLevel level;
    level.sigma = sigma;
    level.directions.resize(states.size());
    level.roots.resize(states.size());
    parallel_for(states.size(), config.workers, [&](std::size_t j) {
      const double radius = states[j].u.norm();
      level.directions[j] = states[j].u / radius;
      RootQuery q{level.directions[j], sigma, radius, states[j].g, g0};
      level.roots[j] = find_root(lsf, q, config.root_options).r;
    });
    level.log_tails = log_tails_of(level.roots, n);
    level.sigma_next = select_from_tails(level.roots, level.log_tails, sigma, config.delta_target, n);
    LevelWeights w = weights_from_tails(level.roots, level.log_tails, sigma, level.sigma_next, n);
    level.log_weights = std::move(w.log_weights);
    level.weights = std::move(w.weights);
    level.s_hat = w.mean;
    level.delta_w = w.cv;

    if (level.sigma_next > 1.0) {
      const Rng level_rng = run_rng.substream(static_cast<std::uint64_t>(level_index));
      Rng resample_rng = level_rng.substream(kStreamResample);
      ResampledSeeds seeds = resample_seeds(lsf, level, config.n0, resample_rng);
      level.resample_fallbacks = seeds.fallbacks;
      if (seeds.fallbacks > 0) {
        std::clog << "warning: " << seeds.fallbacks << " resampled seeds at sigma = " << level.sigma_next
                  << " fell back to the root (several crossings along a direction)\n";
      }

      ChainBatchStats stats;
      const Rng chain_rng = level_rng.substream(kStreamChains);
      if (config.kernel == KernelType::independent) {
        Rng enrich_rng = level_rng.substream(kStreamEnrich);
        std::vector<Vector> fit_points;
        fit_points.reserve(seeds.seeds.size() * config.fit_radii_per_direction);
        for (std::size_t s = 0; s < seeds.seeds.size(); ++s) {
          const Vector& a = level.directions[seeds.parents[s]];
          for (int m = 0; m < config.fit_radii_per_direction; ++m) {
            fit_points.push_back(sample_truncated_chi(n, seeds.radii_min[s], enrich_rng) * a);
          }
        }
        Rng fit_rng = level_rng.substream(kStreamFit);
        const GmmFit fit = fit_gmm(fit_points, config.components, fit_rng);
        states = run_imh_chains(lsf, level.sigma_next, seeds.seeds, fit.mixture, config.chain_length, chain_rng,
                                config.workers, &stats);
      } else {
        beta.batch_index = 0;
        states = run_csmh_chains(lsf, level.sigma_next, seeds.seeds, beta, batch, config.chain_length, chain_rng,
                                 config.workers, &stats);
      }
      level.acceptance_rate = stats.proposed ? static_cast<double>(stats.accepted) / stats.proposed : 0.0;
      level.stuck_chains = stats.stuck_chains;
    }
    sigma = level.sigma_next;
    result.levels.push_back(std::move(level));
  }

  result.pf = result.p_sigma1;
  for (const auto& level : result.levels) result.pf *= level.s_hat;
  result.cv = estimate_cv(result);
  result.evaluations = lsf.evaluations() - before;
  return result;
}

}  // namespace sdis
