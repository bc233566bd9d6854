#pragma once

/// Gaussian mixture density and its EM fit, used as the proposal of the
/// independent Metropolis-Hastings kernel.

#include <vector>

#include <Eigen/Cholesky>

#include "sdis/rng.h"
#include "sdis/types.h"

namespace sdis {

class GaussianMixture {
 public:
  /// Weights are renormalized to sum to one. Throws DomainError if a
  /// covariance has no Cholesky factor, DimensionMismatch on inconsistent
  /// shapes.
  GaussianMixture(std::vector<double> weights, std::vector<Vector> means, std::vector<Matrix> covariances);

  int components() const noexcept { return static_cast<int>(weights_.size()); }
  int dimension() const noexcept { return static_cast<int>(means_.front().size()); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<Vector>& means() const noexcept { return means_; }
  const std::vector<Matrix>& covariances() const noexcept { return covariances_; }

  double log_pdf(const Vector& u) const;
  /// log density of each component including its log weight.
  void component_log_densities(const Vector& u, Eigen::Ref<Vector> out) const;
  Vector sample(Rng& rng) const;

 private:
  std::vector<double> weights_;
  std::vector<Vector> means_;
  std::vector<Matrix> covariances_;
  std::vector<Matrix> chol_;  // lower factors
  std::vector<double> log_const_;  // log w - n/2 log 2pi - log det L
};

struct GmmOptions {
  int max_iterations = 500;
  /// Stop when |L_t - L_{t-1}| < rel_tol * |L_t|.
  double rel_tol = 1e-6;
  /// Added to each covariance diagonal as ridge * trace(Sigma) / n.
  double ridge = 1e-6;
};

struct GmmFit {
  GaussianMixture mixture;
  /// Log-likelihood after initialization and after every EM iteration.
  std::vector<double> log_likelihood;
  int iterations = 0;
  bool converged = false;
  /// Components dropped because their weight fell below 1 / (10 N).
  int pruned = 0;
};

/// EM fit of a K-component mixture with k-means++ initialization.
/// Requires at least 10 K samples.
GmmFit fit_gmm(const std::vector<Vector>& samples, int components, Rng& rng, const GmmOptions& options = {});

}  // namespace sdis
