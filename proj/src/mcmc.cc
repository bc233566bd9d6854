#include "sdis/mcmc.h"

#include <algorithm>
#include <cmath>

#include "sdis/error.h"
#include "sdis/parallel.h"

namespace sdis {

namespace {

void check_chain_args(const ChainState& seed, int length) {
  if (length < 1) throw DomainError("chain length must be >= 1");
  if (!(seed.g <= 0.0)) throw DomainError("chain seed must lie in the failure set");
}

}  // namespace

ChainResult imh_chain(const LimitState& lsf, double sigma, const ChainState& seed,
                      const GaussianMixture& proposal, int length, Rng& rng) {
  check_chain_args(seed, length);
  ChainResult out{seed, 0, 0};
  // The normal constant of phi is dropped; it cancels in the ratio.
  double log_phi = -0.5 * out.state.u.squaredNorm();
  double log_pi = proposal.log_pdf(out.state.u);
  for (int t = 0; t < length; ++t) {
    Vector cand = proposal.sample(rng);
    const double g = lsf.evaluate_scaled(sigma, cand);
    const double w = rng.uniform();
    ++out.proposed;
    if (g > 0.0) continue;
    const double cand_phi = -0.5 * cand.squaredNorm();
    const double cand_pi = proposal.log_pdf(cand);
    if (std::log(w) <= imh_log_ratio(cand_phi, cand_pi, log_phi, log_pi)) {
      out.state.u = std::move(cand);
      out.state.g = g;
      log_phi = cand_phi;
      log_pi = cand_pi;
      ++out.accepted;
    }
  }
  return out;
}

ChainResult csmh_chain(const LimitState& lsf, double sigma, const ChainState& seed, double beta,
                       int length, Rng& rng) {
  check_chain_args(seed, length);
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("csmh_chain: beta must lie in (0, 1)");
  ChainResult out{seed, 0, 0};
  const double rho = std::sqrt(1.0 - beta * beta);
  Vector cand(seed.u.size());
  for (int t = 0; t < length; ++t) {
    for (int i = 0; i < cand.size(); ++i) cand[i] = rho * out.state.u[i] + beta * rng.normal();
    const double g = lsf.evaluate_scaled(sigma, cand);
    ++out.proposed;
    if (g <= 0.0) {
      out.state.u = cand;
      out.state.g = g;
      ++out.accepted;
    }
  }
  return out;
}

AdaptiveBeta adapt_beta(AdaptiveBeta state, double observed_acceptance) {
  ++state.batch_index;
  const double step = 1.0 / std::sqrt(static_cast<double>(state.batch_index));
  const double next = state.beta * std::exp(step * (observed_acceptance - AdaptiveBeta::kTargetAcceptance));
  state.beta = std::clamp(next, AdaptiveBeta::kMinBeta, AdaptiveBeta::kMaxBeta);
  return state;
}

std::vector<ChainState> run_imh_chains(const LimitState& lsf, double sigma, const std::vector<ChainState>& seeds,
                                       const GaussianMixture& proposal, int length, const Rng& rng, int workers,
                                       ChainBatchStats* stats) {
  std::vector<ChainResult> results(seeds.size());
  parallel_for(seeds.size(), workers, [&](std::size_t j) {
    Rng chain_rng = rng.substream(j);
    results[j] = imh_chain(lsf, sigma, seeds[j], proposal, length, chain_rng);
  });
  std::vector<ChainState> out;
  out.reserve(results.size());
  for (auto& r : results) {
    if (stats) {
      stats->accepted += r.accepted;
      stats->proposed += r.proposed;
      stats->stuck_chains += r.stuck();
    }
    out.push_back(std::move(r.state));
  }
  return out;
}

std::vector<ChainState> run_csmh_chains(const LimitState& lsf, double sigma, const std::vector<ChainState>& seeds,
                                        AdaptiveBeta& beta, std::size_t batch_size, int length, const Rng& rng,
                                        int workers, ChainBatchStats* stats) {
  batch_size = std::max<std::size_t>(batch_size, 1);
  std::vector<ChainResult> results(seeds.size());
  for (std::size_t begin = 0; begin < seeds.size(); begin += batch_size) {
    const std::size_t end = std::min(seeds.size(), begin + batch_size);
    const double step = beta.beta;
    parallel_for(end - begin, workers, [&](std::size_t k) {
      const std::size_t j = begin + k;
      Rng chain_rng = rng.substream(j);
      results[j] = csmh_chain(lsf, sigma, seeds[j], step, length, chain_rng);
    });
    std::size_t acc = 0, prop = 0;
    for (std::size_t j = begin; j < end; ++j) {
      acc += results[j].accepted;
      prop += results[j].proposed;
    }
    beta.accepted += acc;
    beta.proposed += prop;
    beta = adapt_beta(beta, static_cast<double>(acc) / static_cast<double>(prop));
  }
  std::vector<ChainState> out;
  out.reserve(results.size());
  for (auto& r : results) {
    if (stats) {
      stats->accepted += r.accepted;
      stats->proposed += r.proposed;
      stats->stuck_chains += r.stuck();
    }
    out.push_back(std::move(r.state));
  }
  return out;
}

}  // namespace sdis
