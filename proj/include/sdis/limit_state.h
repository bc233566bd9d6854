#pragma once

/// Limit-state functions in standard-normal space. Failure is {G(u) <= 0}.

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>

#include "sdis/types.h"

namespace sdis {

/// A performance function G over u-space with an evaluation counter.
///
/// The counter increments by exactly one per evaluate() call and is never
/// reset implicitly; estimators report cost as the counter delta over a run.
/// evaluate() is safe to call concurrently.
class LimitState {
 public:
  explicit LimitState(int dimension);
  virtual ~LimitState() = default;
  LimitState(const LimitState&) = delete;
  LimitState& operator=(const LimitState&) = delete;

  int dimension() const noexcept { return dimension_; }
  virtual std::string name() const = 0;

  /// G(u). Throws DimensionMismatch on a wrong-length input.
  double evaluate(const Vector& u) const;
  /// G(sigma * u), the magnified limit state.
  double evaluate_scaled(double sigma, const Vector& u) const { return evaluate(sigma * u); }

  std::uint64_t evaluations() const noexcept { return count_.load(std::memory_order_relaxed); }

 protected:
  virtual double compute(const Vector& u) const = 0;

 private:
  int dimension_;
  mutable std::atomic<std::uint64_t> count_{0};
};

/// Adapter for an arbitrary callable, mainly for tests and ad-hoc models.
class FunctionLimitState final : public LimitState {
 public:
  using Fn = std::function<double(const Vector&)>;
  FunctionLimitState(int dimension, Fn fn, std::string name = "function");
  std::string name() const override { return name_; }

 protected:
  double compute(const Vector& u) const override { return fn_(u); }

 private:
  Fn fn_;
  std::string name_;
};

}  // namespace sdis
