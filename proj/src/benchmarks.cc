#include "sdis/benchmarks.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>

#include "sdis/error.h"

namespace sdis {

namespace {

void require_length(const Vector& u, Eigen::Index n, const char* model) {
  if (u.size() != n) {
    throw DimensionMismatch(std::string(model) + ": expected input of length " + std::to_string(n) +
                            ", got " + std::to_string(u.size()));
  }
}

void require_nonempty(const Vector& u, const char* model) {
  if (u.size() < 1) throw DimensionMismatch(std::string(model) + ": empty input");
}

std::string format_id(const char* base, Eigen::Index n, double beta) {
  std::ostringstream os;
  os << base << ":n=" << n << ":beta=" << beta;
  return os.str();
}

}  // namespace

double four_branch(const Vector& u) {
  require_length(u, 2, "four_branch");
  const double d = u[0] - u[1];
  const double s = (u[0] + u[1]) / std::sqrt(2.0);
  const double c = 6.0 / std::sqrt(2.0);
  return std::min({3.0 + 0.1 * d * d - s, 3.0 + 0.1 * d * d + s, d + c, -d + c}) + 2.0;
}

double two_region(const Vector& u) {
  require_length(u, 2, "two_region");
  const double d = u[0] - u[1];
  const double s = (u[0] + u[1]) / std::sqrt(2.0);
  return std::min(3.2 + s, 2.5 + 0.1 * d * d - s) + 3.0;
}

const NormalMarginals& oscillator_marginals() {
  static const NormalMarginals marginals({1.0, 1.0, 0.1, 0.5, 0.3, 1.0},
                                         {0.05, 0.1, 0.01, 0.05, 0.2, 0.2});
  return marginals;
}

double oscillator(const Vector& u) {
  require_length(u, 6, "oscillator");
  const Vector x = oscillator_marginals().from_standard_normal(u);
  const double m = x[0], c1 = x[1], c2 = x[2], r = x[3], f1 = x[4], t1 = x[5];
  if (m <= 0.0 || c1 + c2 <= 0.0) return -std::numeric_limits<double>::infinity();
  const double omega0 = std::sqrt((c1 + c2) / m);
  return 3.0 * r - std::abs(2.0 * f1 / (m * omega0 * omega0) * std::sin(0.5 * omega0 * t1));
}

double linear_sum(const Vector& u, double beta) {
  require_nonempty(u, "linear_sum");
  return beta - u.sum() / std::sqrt(static_cast<double>(u.size()));
}

double series_two_sided(const Vector& u, double beta) {
  require_nonempty(u, "series_two_sided");
  const double s = u.sum() / std::sqrt(static_cast<double>(u.size()));
  return std::min(beta - s, beta + s);
}

double Oscillator::compute(const Vector& u) const {
  const double g = oscillator(u);
  if (std::isinf(g)) {
    faults_.fetch_add(1, std::memory_order_relaxed);
    static std::once_flag warned;
    std::call_once(warned, [] {
      std::clog << "warning: oscillator sample outside the physical domain (M <= 0 or c1 + c2 <= 0);"
                   " treated as failure\n";
    });
  }
  return g;
}

std::string LinearSum::name() const { return format_id("linear_sum", dimension(), beta_); }

std::string SeriesTwoSided::name() const {
  return format_id("series_two_sided", dimension(), beta_);
}

}  // namespace sdis
