#include "sdis/marginals.h"

#include <string>

#include "sdis/error.h"

namespace sdis {

NormalMarginals::NormalMarginals(std::vector<double> means, std::vector<double> std_devs)
    : means_(std::move(means)), std_devs_(std::move(std_devs)) {
  if (means_.size() != std_devs_.size()) {
    throw DimensionMismatch("marginals: " + std::to_string(means_.size()) + " means but " +
                            std::to_string(std_devs_.size()) + " standard deviations");
  }
  for (double s : std_devs_) {
    if (!(s > 0.0)) throw DomainError("marginals: standard deviations must be positive");
  }
}

void NormalMarginals::check(const Vector& v) const {
  if (v.size() != dimension()) {
    throw DimensionMismatch("marginals: expected length " + std::to_string(dimension()) +
                            ", got " + std::to_string(v.size()));
  }
}

Vector NormalMarginals::to_standard_normal(const Vector& x) const {
  check(x);
  Vector u(x.size());
  for (int i = 0; i < x.size(); ++i) u[i] = (x[i] - means_[i]) / std_devs_[i];
  return u;
}

Vector NormalMarginals::from_standard_normal(const Vector& u) const {
  check(u);
  Vector x(u.size());
  for (int i = 0; i < u.size(); ++i) x[i] = means_[i] + std_devs_[i] * u[i];
  return x;
}

}  // namespace sdis
