#include "rfsvm/rff.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "rfsvm/rng.hpp"

namespace rfsvm {

namespace {

void check_params(Eigen::Index n, Eigen::Index D, double sigma, RffVariant variant) {
  if (n <= 0) throw std::invalid_argument("RffMap: input dimension must be positive");
  if (D <= 0) throw std::invalid_argument("RffMap: output dimension must be positive");
  if (variant == RffVariant::paired && D % 2 != 0) {
    throw std::invalid_argument("RffMap: paired variant needs an even output dimension");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("RffMap: sigma must be positive and finite");
  }
}

}  // namespace

RffMap RffMap::sample(Eigen::Index n, Eigen::Index D, double sigma,
                      RffVariant variant, std::uint64_t seed) {
  check_params(n, D, sigma, variant);
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0 / sigma);
  const Eigen::Index rows = variant == RffVariant::paired ? D / 2 : D;
  Eigen::MatrixXd omegas(rows, n);
  for (Eigen::Index j = 0; j < rows; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) omegas(j, k) = gauss(rng);
  }
  Eigen::VectorXd offsets(0);
  if (variant == RffVariant::offset) {
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
    offsets.resize(rows);
    for (Eigen::Index j = 0; j < rows; ++j) offsets[j] = uni(rng);
  }
  return RffMap(std::move(omegas), std::move(offsets), sigma, D, variant, seed);
}

RffMap::RffMap(Eigen::MatrixXd omegas, Eigen::VectorXd offsets, double sigma,
               Eigen::Index output_dim, RffVariant variant, std::uint64_t seed)
    : omegas_(std::move(omegas)),
      offsets_(std::move(offsets)),
      sigma_(sigma),
      dim_(output_dim),
      variant_(variant),
      seed_(seed) {
  check_params(omegas_.cols(), dim_, sigma_, variant_);
  const Eigen::Index rows = variant_ == RffVariant::paired ? dim_ / 2 : dim_;
  if (omegas_.rows() != rows) {
    throw std::invalid_argument("RffMap: frequency row count mismatch");
  }
  if (!omegas_.allFinite()) {
    throw std::invalid_argument("RffMap: frequencies must be finite");
  }
  if (variant_ == RffVariant::offset) {
    if (offsets_.size() != rows || !offsets_.allFinite()) {
      throw std::invalid_argument("RffMap: offset count mismatch");
    }
  } else if (offsets_.size() != 0) {
    throw std::invalid_argument("RffMap: paired variant takes no offsets");
  }
}

Eigen::VectorXd RffMap::transform(const Eigen::VectorXd& x) const {
  if (x.size() != input_dim()) {
    throw std::invalid_argument("RffMap: input dimension mismatch");
  }
  const double scale = std::sqrt(2.0 / static_cast<double>(dim_));
  Eigen::VectorXd out(dim_);
  if (variant_ == RffVariant::paired) {
    for (Eigen::Index j = 0; j < omegas_.rows(); ++j) {
      const double t = omegas_.row(j).dot(x);
      out[2 * j] = scale * std::cos(t);
      out[2 * j + 1] = scale * std::sin(t);
    }
  } else {
    for (Eigen::Index j = 0; j < omegas_.rows(); ++j) {
      const double t = omegas_.row(j).dot(x) + offsets_[j];
      out[j] = scale * std::cos(t);
    }
  }
  return out;
}

Eigen::VectorXd sigma_omega_norms(const RffMap& map, const Uncertainty& unc) {
  if (unc.sigma_half.dim() != map.input_dim()) {
    throw std::invalid_argument("sigma_omega_norms: dimension mismatch");
  }
  const double q = dual_exponent(unc.p);
  const Eigen::MatrixXd& om = map.omegas();
  Eigen::VectorXd norms(om.rows());
  for (Eigen::Index j = 0; j < om.rows(); ++j) {
    norms[j] = lp_norm(unc.sigma_half.apply_transpose(om.row(j).transpose()), q);
  }
  return norms;
}

FeatureBound rff_bound(const RffMap& map, const Eigen::VectorXd& x,
                       const Uncertainty& unc, double pbar) {
  return rff_bound(map, x, unc, pbar, sigma_omega_norms(map, unc));
}

FeatureBound rff_bound(const RffMap& map, const Eigen::VectorXd& x,
                       const Uncertainty& unc, double pbar,
                       const Eigen::VectorXd& cached_norms) {
  if (map.variant() != RffVariant::paired) {
    throw std::invalid_argument("rff_bound: offset variant has no bound");
  }
  if (x.size() != map.input_dim() || unc.sigma_half.dim() != map.input_dim()) {
    throw std::invalid_argument("rff_bound: dimension mismatch");
  }
  if (!(pbar == 1.0 || pbar == 2.0 || std::isinf(pbar))) {
    throw std::invalid_argument("rff_bound: pbar must be 1, 2 or inf");
  }
  const Eigen::MatrixXd& om = map.omegas();
  if (cached_norms.size() != om.rows()) {
    throw std::invalid_argument("rff_bound: cached norm count mismatch");
  }

  const double D = static_cast<double>(map.output_dim());
  double sum_ab = 0.0;    // sum_j (alpha_j + beta_j)
  double sum_alpha = 0.0;
  double max_ab = 0.0;    // max_j max(alpha_j, beta_j)
  for (Eigen::Index j = 0; j < om.rows(); ++j) {
    const double t = unc.gamma * cached_norms[j];
    const double alpha = std::min(2.0, 0.5 * t * t);
    const double beta = std::min(1.0, t);
    sum_ab += alpha + beta;
    sum_alpha += alpha;
    max_ab = std::max(max_ab, std::max(alpha, beta));
  }

  double gamma_feat = 0.0;
  if (pbar == 1.0) {
    gamma_feat = std::sqrt(2.0 / D) * sum_ab;
  } else if (pbar == 2.0) {
    gamma_feat = std::sqrt(4.0 * sum_alpha / D);
  } else {
    gamma_feat = std::sqrt(2.0 / D) * max_ab;
  }

  Eigen::VectorXd angles(om.rows());
  for (Eigen::Index j = 0; j < om.rows(); ++j) angles[j] = om.row(j).dot(x);
  return FeatureBound(gamma_feat, FeatureRotation::blocks(std::move(angles)),
                      NormPair(pbar));
}

double rff_sigma_min(double gamma, const SigmaHalf& sigma_half, double theta_max) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("rff_sigma_min: gamma must be >= 0");
  }
  if (!(theta_max > 0.0)) {
    throw std::invalid_argument("rff_sigma_min: theta_max must be positive");
  }
  if (!sigma_half.is_diagonal()) {
    throw std::invalid_argument("rff_sigma_min: requires a diagonal Sigma^{1/2}");
  }
  return 3.0 * gamma * sigma_half.frobenius_norm() / theta_max;
}

}  // namespace rfsvm
