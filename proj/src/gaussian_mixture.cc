#include "sdis/gaussian_mixture.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sdis/error.h"

namespace sdis {

namespace {

double log_sum_exp(const Vector& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

/// Adds ridge * trace / n to the diagonal, growing it until a Cholesky
/// factor exists.
Matrix regularize(Matrix cov, double ridge) {
  const double n = static_cast<double>(cov.rows());
  double eps = ridge * std::max(cov.trace() / n, std::numeric_limits<double>::min());
  for (int attempt = 0; attempt < 30; ++attempt) {
    Matrix c = cov;
    c.diagonal().array() += eps;
    if (Eigen::LLT<Matrix>(c).info() == Eigen::Success) return c;
    eps = std::max(eps * 10.0, 1e-12);
  }
  throw DomainError("fit_gmm: covariance cannot be regularized");
}

}  // namespace

GaussianMixture::GaussianMixture(std::vector<double> weights, std::vector<Vector> means,
                                 std::vector<Matrix> covariances)
    : weights_(std::move(weights)), means_(std::move(means)), covariances_(std::move(covariances)) {
  const std::size_t k = weights_.size();
  if (k == 0 || means_.size() != k || covariances_.size() != k) {
    throw DimensionMismatch("GaussianMixture: weights, means and covariances must have equal non-zero length");
  }
  const auto n = means_.front().size();
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw DomainError("GaussianMixture: negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("GaussianMixture: weights sum to zero");
  for (auto& w : weights_) w /= total;

  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < k; ++j) {
    if (means_[j].size() != n || covariances_[j].rows() != n || covariances_[j].cols() != n) {
      throw DimensionMismatch("GaussianMixture: component " + std::to_string(j) + " has wrong shape");
    }
    Eigen::LLT<Matrix> llt(covariances_[j]);
    if (llt.info() != Eigen::Success) {
      throw DomainError("GaussianMixture: covariance " + std::to_string(j) + " is not positive definite");
    }
    Matrix l = llt.matrixL();
    chol_.push_back(l);
    log_const_.push_back(std::log(weights_[j]) - static_cast<double>(n) * half_log_2pi -
                         l.diagonal().array().log().sum());
  }
}

void GaussianMixture::component_log_densities(const Vector& u, Eigen::Ref<Vector> out) const {
  for (int j = 0; j < components(); ++j) {
    const Vector z = chol_[j].triangularView<Eigen::Lower>().solve(u - means_[j]);
    out[j] = log_const_[j] - 0.5 * z.squaredNorm();
  }
}

double GaussianMixture::log_pdf(const Vector& u) const {
  Vector lp(components());
  component_log_densities(u, lp);
  return log_sum_exp(lp);
}

Vector GaussianMixture::sample(Rng& rng) const {
  double x = rng.uniform();
  int j = 0;
  for (; j + 1 < components(); ++j) {
    if (x < weights_[j]) break;
    x -= weights_[j];
  }
  Vector z(dimension());
  for (int i = 0; i < z.size(); ++i) z[i] = rng.normal();
  return means_[j] + chol_[j] * z;
}

GmmFit fit_gmm(const std::vector<Vector>& samples, int components, Rng& rng, const GmmOptions& options) {
  if (components < 1) throw DomainError("fit_gmm: need at least one component");
  const int n_samples = static_cast<int>(samples.size());
  if (n_samples < 10 * components) {
    throw DomainError("fit_gmm: need at least 10 samples per component, got " + std::to_string(n_samples));
  }
  const int dim = static_cast<int>(samples.front().size());
  Matrix x(dim, n_samples);
  for (int i = 0; i < n_samples; ++i) x.col(i) = samples[i];

  // k-means++ seeding of the means.
  std::vector<Vector> means;
  means.push_back(x.col(static_cast<int>(rng.index(n_samples))));
  Vector d2 = (x.colwise() - means.back()).colwise().squaredNorm().transpose();
  while (static_cast<int>(means.size()) < components) {
    const double total = d2.sum();
    int pick = n_samples - 1;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (int i = 0; i < n_samples; ++i) {
        target -= d2[i];
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<int>(rng.index(n_samples));
    }
    means.push_back(x.col(pick));
    d2 = d2.cwiseMin((x.colwise() - means.back()).colwise().squaredNorm().transpose());
  }

  const Vector global_mean = x.rowwise().mean();
  const Matrix centered = x.colwise() - global_mean;
  const Matrix global_cov = regularize(centered * centered.transpose() / n_samples, options.ridge);

  std::vector<double> weights(components, 1.0 / components);
  std::vector<Matrix> covs(components, global_cov);
  GaussianMixture mix(weights, means, covs);

  const double prune_below = 1.0 / (10.0 * n_samples);
  GmmFit fit{mix, {}, 0, false, 0};
  Matrix resp;
  auto e_step = [&](const GaussianMixture& m) {
    const int k = m.components();
    resp.resize(k, n_samples);
    double ll = 0.0;
    Vector lp(k);
    for (int i = 0; i < n_samples; ++i) {
      m.component_log_densities(x.col(i), lp);
      const double lse = log_sum_exp(lp);
      ll += lse;
      resp.col(i) = (lp.array() - lse).exp();
    }
    return ll;
  };

  double ll = e_step(fit.mixture);
  fit.log_likelihood.push_back(ll);
  for (int it = 0; it < options.max_iterations; ++it) {
    const int k = fit.mixture.components();
    std::vector<double> w;
    std::vector<Vector> mu;
    std::vector<Matrix> cov;
    for (int j = 0; j < k; ++j) {
      const double nj = resp.row(j).sum();
      if (nj / n_samples < prune_below) {
        ++fit.pruned;
        continue;
      }
      const Vector m = x * resp.row(j).transpose() / nj;
      const Matrix c = x.colwise() - m;
      const Matrix weighted = (c.array().rowwise() * resp.row(j).array()).matrix();
      const Matrix s = weighted * c.transpose() / nj;
      w.push_back(nj / n_samples);
      mu.push_back(m);
      cov.push_back(regularize(s, options.ridge));
    }
    if (w.empty()) throw DomainError("fit_gmm: every component degenerated");
    fit.mixture = GaussianMixture(std::move(w), std::move(mu), std::move(cov));
    const double next = e_step(fit.mixture);
    fit.log_likelihood.push_back(next);
    fit.iterations = it + 1;
    const bool done = std::abs(next - ll) < options.rel_tol * std::abs(next);
    ll = next;
    if (done) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

}  // namespace sdis
