#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "rfsvm/feature_bound.hpp"
#include "rfsvm/uncertainty.hpp"

namespace rfsvm {

// paired: D/2 frequencies expanded into (cos, sin) pairs; every feature
//   vector has unit Euclidean norm and the map admits displacement bounds.
// offset: D frequencies with uniform phase offsets; kept for kernel
//   approximation comparisons only, no bound support.
enum class RffVariant { paired, offset };

// Random Fourier feature map for the Gaussian kernel of bandwidth sigma.
// Frequencies are i.i.d. N(0, I/sigma^2); the seed fully determines the map.
class RffMap {
 public:
  static RffMap sample(Eigen::Index n, Eigen::Index D, double sigma,
                       RffVariant variant, std::uint64_t seed);

  // Reassembles a previously sampled map (deserialization); validates shapes.
  RffMap(Eigen::MatrixXd omegas, Eigen::VectorXd offsets, double sigma,
         Eigen::Index output_dim, RffVariant variant, std::uint64_t seed);

  Eigen::VectorXd transform(const Eigen::VectorXd& x) const;

  Eigen::Index input_dim() const { return omegas_.cols(); }
  Eigen::Index output_dim() const { return dim_; }
  double sigma() const { return sigma_; }
  RffVariant variant() const { return variant_; }
  std::uint64_t seed() const { return seed_; }
  // One frequency per row: D/2 rows (paired) or D rows (offset).
  const Eigen::MatrixXd& omegas() const { return omegas_; }
  const Eigen::VectorXd& offsets() const { return offsets_; }

 private:
  Eigen::MatrixXd omegas_;
  Eigen::VectorXd offsets_;
  double sigma_;
  Eigen::Index dim_;
  RffVariant variant_;
  std::uint64_t seed_;
};

// ||Sigma^{T/2} omega_j||_q for every frequency row, q dual to unc.p. This is
// the per-map part of the displacement bound; cache it when many samples
// share one uncertainty description.
Eigen::VectorXd sigma_omega_norms(const RffMap& map, const Uncertainty& unc);

// Certified displacement bound at sample x for the paired variant, measured
// in the pbar norm (pbar in {1, 2, inf}). The rotation aligns each feature
// pair with the phase omega_j . x.
FeatureBound rff_bound(const RffMap& map, const Eigen::VectorXd& x,
                       const Uncertainty& unc, double pbar);
FeatureBound rff_bound(const RffMap& map, const Eigen::VectorXd& x,
                       const Uncertainty& unc, double pbar,
                       const Eigen::VectorXd& cached_norms);

// Smallest bandwidth that keeps every rotated displacement angle within
// theta_max with high probability, for diagonal Sigma^{1/2}:
// 3 gamma ||Sigma^{1/2}||_F / theta_max.
double rff_sigma_min(double gamma, const SigmaHalf& sigma_half, double theta_max);

}  // namespace rfsvm
