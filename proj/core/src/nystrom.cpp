#include "rfsvm/nystrom.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rfsvm/kernel.hpp"
#include "rfsvm/rng.hpp"

namespace rfsvm {

namespace {

void check_landmarks(const std::vector<Eigen::VectorXd>& landmarks, double sigma,
                     double rank_tol) {
  if (landmarks.empty()) {
    throw std::invalid_argument("NystromMap: at least one landmark required");
  }
  const Eigen::Index n = landmarks.front().size();
  if (n == 0) {
    throw std::invalid_argument("NystromMap: landmarks must be nonempty vectors");
  }
  for (const auto& l : landmarks) {
    if (l.size() != n) {
      throw std::invalid_argument("NystromMap: inconsistent landmark dimensions");
    }
    if (!l.allFinite()) {
      throw std::invalid_argument("NystromMap: landmarks must be finite");
    }
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("NystromMap: sigma must be positive and finite");
  }
  if (!(rank_tol >= 0.0) || !(rank_tol < 1.0)) {
    throw std::invalid_argument("NystromMap: rank_tol must lie in [0, 1)");
  }
}

Eigen::MatrixXd landmark_kernel(const std::vector<Eigen::VectorXd>& landmarks,
                                double sigma) {
  const Eigen::Index m = static_cast<Eigen::Index>(landmarks.size());
  Eigen::MatrixXd K(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    K(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double k = gaussian_kernel(landmarks[i], landmarks[j], sigma);
      K(i, j) = k;
      K(j, i) = k;
    }
  }
  return K;
}

}  // namespace

NystromMap NystromMap::fit(std::vector<Eigen::VectorXd> landmarks, double sigma,
                           double rank_tol) {
  check_landmarks(landmarks, sigma, rank_tol);
  const Eigen::MatrixXd K = landmark_kernel(landmarks, sigma);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("NystromMap: eigendecomposition failed");
  }
  // Eigen returns eigenvalues in increasing order; flip to nonincreasing.
  const Eigen::Index m = K.rows();
  Eigen::VectorXd vals(m);
  Eigen::MatrixXd vecs(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    vals[i] = eig.eigenvalues()[m - 1 - i];
    vecs.col(i) = eig.eigenvectors().col(m - 1 - i);
  }
  const double lmax = vals[0];
  if (!(lmax > 0.0)) {
    throw std::runtime_error("NystromMap: landmark kernel matrix is degenerate");
  }
  const double cutoff = std::max(rank_tol * lmax, 0.0);
  Eigen::Index r = 0;
  while (r < m && vals[r] > cutoff && vals[r] > 0.0) ++r;
  if (r == 0) {
    throw std::runtime_error("NystromMap: no eigenvalue above the rank cutoff");
  }
  return NystromMap(std::move(landmarks), sigma, rank_tol, vecs.leftCols(r),
                    vals.head(r));
}

NystromMap::NystromMap(std::vector<Eigen::VectorXd> landmarks, double sigma,
                       double rank_tol, Eigen::MatrixXd eigvecs,
                       Eigen::VectorXd eigvals)
    : landmarks_(std::move(landmarks)),
      sigma_(sigma),
      rank_tol_(rank_tol),
      eigvecs_(std::move(eigvecs)),
      eigvals_(std::move(eigvals)) {
  check_landmarks(landmarks_, sigma_, rank_tol_);
  const Eigen::Index m = static_cast<Eigen::Index>(landmarks_.size());
  const Eigen::Index r = eigvals_.size();
  if (r == 0 || r > m || eigvecs_.rows() != m || eigvecs_.cols() != r) {
    throw std::invalid_argument("NystromMap: decomposition shape mismatch");
  }
  for (Eigen::Index i = 0; i < r; ++i) {
    if (!(eigvals_[i] > 0.0) || !std::isfinite(eigvals_[i])) {
      throw std::invalid_argument("NystromMap: eigenvalues must be positive");
    }
    if (i > 0 && eigvals_[i] > eigvals_[i - 1]) {
      throw std::invalid_argument("NystromMap: eigenvalues must be nonincreasing");
    }
  }
  const double orth =
      (eigvecs_.transpose() * eigvecs_ - Eigen::MatrixXd::Identity(r, r))
          .cwiseAbs()
          .maxCoeff();
  if (orth > 1e-10) {
    throw std::invalid_argument("NystromMap: eigenvector columns not orthonormal");
  }
  const Eigen::MatrixXd K = landmark_kernel(landmarks_, sigma_);
  const double resid =
      (K * eigvecs_ - eigvecs_ * eigvals_.asDiagonal()).cwiseAbs().maxCoeff();
  if (resid > 1e-8) {
    throw std::invalid_argument("NystromMap: eigenpair residual too large");
  }
  sqrt_eigvals_ =
      std::make_shared<const Eigen::VectorXd>(eigvals_.cwiseSqrt());
}

Eigen::VectorXd NystromMap::transform(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim()) {
    throw std::invalid_argument("NystromMap: input dimension mismatch");
  }
  const Eigen::Index m = static_cast<Eigen::Index>(landmarks_.size());
  Eigen::VectorXd k(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    k[j] = gaussian_kernel(x, landmarks_[j], sigma_);
  }
  return (eigvecs_.transpose() * k).cwiseQuotient(*sqrt_eigvals_);
}

std::vector<Eigen::VectorXd> select_landmarks(const Dataset& data, std::size_t m,
                                              std::uint64_t seed) {
  if (m == 0) {
    throw std::invalid_argument("select_landmarks: need at least one landmark");
  }
  const std::size_t take = std::min(m, data.size());
  std::vector<std::size_t> idx(data.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto rng = make_rng(seed);
  // Partial Fisher-Yates: the first `take` slots end up a uniform sample
  // without replacement.
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(data.sample(idx[i]));
  return out;
}

FeatureBound nystrom_bound(const NystromMap& map, const Eigen::VectorXd& x,
                           const Uncertainty& unc) {
  if (unc.p != 2.0) {
    throw std::invalid_argument("nystrom_bound: only p = 2 uncertainty supported");
  }
  if (x.size() != map.input_dim() || unc.sigma_half.dim() != map.input_dim()) {
    throw std::invalid_argument("nystrom_bound: dimension mismatch");
  }
  const double sigma2 = map.sigma() * map.sigma();
  // Per landmark: k_j = exp(-e_j) with e_j = ||x - xhat_j||^2 / (2 sigma^2),
  // tau_j = exp(-g_j) with g_j = gamma ||Sigma^{T/2}(x - xhat_j)|| / sigma^2.
  // The radicand sum k_j^2 (1/tau_j^2 + 1) - 2 rho sum k_j^2 tau_j is
  // accumulated from single exponentials so each term stays finite whenever
  // the overall bound is, and gamma = 0 cancels exactly.
  double sum_a = 0.0;  // sum exp(2 g - 2 e) + exp(-2 e)
  double sum_b = 0.0;  // sum exp(-2 e - g)
  for (const auto& lm : map.landmarks()) {
    const Eigen::VectorXd d = x - lm;
    const double e = d.squaredNorm() / (2.0 * sigma2);
    const double g =
        unc.gamma * unc.sigma_half.apply_transpose(d).norm() / sigma2;
    sum_a += std::exp(2.0 * g - 2.0 * e) + std::exp(-2.0 * e);
    sum_b += std::exp(-2.0 * e - g);
  }
  const double snorm = unc.sigma_half.spectral_norm();
  const double rho = std::exp(-unc.gamma * unc.gamma * snorm * snorm / (2.0 * sigma2));
  const double radicand = sum_a - 2.0 * rho * sum_b;
  if (radicand < -1e-12) {
    throw std::logic_error("nystrom_bound: negative radicand");
  }
  const double r = static_cast<double>(map.output_dim());
  const double gamma_feat = std::sqrt(r * std::max(radicand, 0.0));
  return FeatureBound(gamma_feat, FeatureRotation::diag(map.sqrt_eigvals()),
                      NormPair(2.0));
}

}  // namespace rfsvm
