#pragma once

/// Isoprobabilistic map between independent normal physical inputs and
/// standard-normal space.

#include <vector>

#include "sdis/types.h"

namespace sdis {

class NormalMarginals {
 public:
  /// Throws DimensionMismatch on unequal lengths and DomainError on a
  /// non-positive standard deviation.
  NormalMarginals(std::vector<double> means, std::vector<double> std_devs);

  int dimension() const noexcept { return static_cast<int>(means_.size()); }
  const std::vector<double>& means() const noexcept { return means_; }
  const std::vector<double>& std_devs() const noexcept { return std_devs_; }

  /// u_l = (x_l - mean_l) / std_l.
  Vector to_standard_normal(const Vector& x) const;
  /// x_l = mean_l + std_l * u_l.
  Vector from_standard_normal(const Vector& u) const;

 private:
  void check(const Vector& v) const;

  std::vector<double> means_;
  std::vector<double> std_devs_;
};

}  // namespace sdis
