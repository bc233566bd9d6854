#pragma once

/// Benchmark reliability problems with known or reference failure
/// probabilities. The free functions are the raw performance functions;
/// the classes wrap them as counted LimitState models.

#include <atomic>

#include "sdis/limit_state.h"
#include "sdis/marginals.h"

namespace sdis {

/// Series system of two parabolic and two linear branches (2-D).
/// Reference failure probability 1.058e-5.
double four_branch(const Vector& u);
/// Series system with two distinct failure regions (2-D).
/// Reference failure probability 1.10e-8.
double two_region(const Vector& u);
/// Undamped nonlinear oscillator over x = (M, c1, c2, r, F1, t1), evaluated
/// in u-space through oscillator_marginals(). Returns -inf when the mapped
/// sample has M <= 0 or c1 + c2 <= 0. Reference failure probability 6.43e-6.
double oscillator(const Vector& u);
/// beta - sum(u) / sqrt(n); exact failure probability Phi(-beta).
double linear_sum(const Vector& u, double beta);
/// min(beta - s, beta + s) with s = sum(u) / sqrt(n); exact failure
/// probability 2 Phi(-beta).
double series_two_sided(const Vector& u, double beta);

/// Input distribution of the oscillator: independent normals with
/// means (1, 1, 0.1, 0.5, 0.3, 1) and std devs (0.05, 0.1, 0.01, 0.05, 0.2, 0.2).
const NormalMarginals& oscillator_marginals();

class FourBranch final : public LimitState {
 public:
  FourBranch() : LimitState(2) {}
  std::string name() const override { return "four_branch"; }

 protected:
  double compute(const Vector& u) const override { return four_branch(u); }
};

class TwoRegion final : public LimitState {
 public:
  TwoRegion() : LimitState(2) {}
  std::string name() const override { return "two_region"; }

 protected:
  double compute(const Vector& u) const override { return two_region(u); }
};

/// Oscillator model. Samples that leave the physical domain are treated as
/// failures (g = -inf), counted per instance, and reported once per process
/// on std::clog.
class Oscillator final : public LimitState {
 public:
  Oscillator() : LimitState(6) {}
  std::string name() const override { return "oscillator"; }
  std::uint64_t domain_faults() const noexcept { return faults_.load(); }

 protected:
  double compute(const Vector& u) const override;

 private:
  mutable std::atomic<std::uint64_t> faults_{0};
};

class LinearSum final : public LimitState {
 public:
  explicit LinearSum(int n, double beta = 4.0) : LimitState(n), beta_(beta) {}
  std::string name() const override;
  double beta() const noexcept { return beta_; }

 protected:
  double compute(const Vector& u) const override { return linear_sum(u, beta_); }

 private:
  double beta_;
};

class SeriesTwoSided final : public LimitState {
 public:
  explicit SeriesTwoSided(int n, double beta = 4.0) : LimitState(n), beta_(beta) {}
  std::string name() const override;
  double beta() const noexcept { return beta_; }

 protected:
  double compute(const Vector& u) const override { return series_two_sided(u, beta_); }

 private:
  double beta_;
};

}  // namespace sdis
