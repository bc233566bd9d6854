#include "sdis/limit_state.h"

#include "sdis/error.h"

namespace sdis {

LimitState::LimitState(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw DomainError("limit state dimension must be >= 1");
}

double LimitState::evaluate(const Vector& u) const {
  if (u.size() != dimension_) {
    throw DimensionMismatch(name() + ": expected input of length " + std::to_string(dimension_) +
                            ", got " + std::to_string(u.size()));
  }
  count_.fetch_add(1, std::memory_order_relaxed);
  return compute(u);
}

FunctionLimitState::FunctionLimitState(int dimension, Fn fn, std::string name)
    : LimitState(dimension), fn_(std::move(fn)), name_(std::move(name)) {}

}  // namespace sdis
