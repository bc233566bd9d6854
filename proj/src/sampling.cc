#include "sdis/sampling.h"

#include <algorithm>
#include <cmath>

#include "sdis/error.h"
#include "sdis/special_functions.h"

namespace sdis {

Vector sample_std_normal(int n, Rng& rng) {
  Vector u(n);
  for (int i = 0; i < n; ++i) u[i] = rng.normal();
  return u;
}

Vector sample_uniform_direction(int n, Rng& rng) {
  if (n < 1) throw DomainError("direction dimension must be >= 1");
  for (;;) {
    Vector u = sample_std_normal(n, rng);
    const double norm = u.norm();
    if (norm > 0.0) return u / norm;
  }
}

double truncated_chi_from_uniform(int n, double r_min, double u) {
  if (!(r_min >= 0.0) || !std::isfinite(r_min)) {
    throw DomainError("truncation radius must be finite and >= 0");
  }
  const double log_tail = std::log(u) + chi2_log_upper_tail(n, r_min * r_min);
  return std::max(r_min, std::sqrt(chi2_upper_quantile_log(n, log_tail)));
}

double sample_truncated_chi(int n, double r_min, Rng& rng) {
  return truncated_chi_from_uniform(n, r_min, rng.uniform_open());
}

}  // namespace sdis
