#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <vector>

#include "rfsvm/dataset.hpp"
#include "rfsvm/feature_bound.hpp"
#include "rfsvm/uncertainty.hpp"

namespace rfsvm {

// Low-rank feature map phi(x) = Lambda^{-1/2} U^T khat(x) built from the
// eigendecomposition of the landmark kernel matrix. Eigenpairs below
// rank_tol * lambda_max are dropped, so output_dim() is the retained rank.
class NystromMap {
 public:
  static NystromMap fit(std::vector<Eigen::VectorXd> landmarks, double sigma,
                        double rank_tol);

  // Reassembles a fitted map (deserialization); re-validates the
  // orthonormality and eigenpair residuals of the decomposition.
  NystromMap(std::vector<Eigen::VectorXd> landmarks, double sigma, double rank_tol,
             Eigen::MatrixXd eigvecs, Eigen::VectorXd eigvals);

  Eigen::VectorXd transform(const Eigen::VectorXd& x) const;

  Eigen::Index input_dim() const { return landmarks_.front().size(); }
  Eigen::Index output_dim() const { return eigvals_.size(); }
  double sigma() const { return sigma_; }
  double rank_tol() const { return rank_tol_; }
  const std::vector<Eigen::VectorXd>& landmarks() const { return landmarks_; }
  // m x r with orthonormal columns.
  const Eigen::MatrixXd& eigvecs() const { return eigvecs_; }
  // Positive, nonincreasing, length r.
  const Eigen::VectorXd& eigvals() const { return eigvals_; }
  // Lambda^{1/2}, shared with the bounds built from this map.
  const std::shared_ptr<const Eigen::VectorXd>& sqrt_eigvals() const {
    return sqrt_eigvals_;
  }

 private:
  std::vector<Eigen::VectorXd> landmarks_;
  double sigma_;
  double rank_tol_;
  Eigen::MatrixXd eigvecs_;
  Eigen::VectorXd eigvals_;
  std::shared_ptr<const Eigen::VectorXd> sqrt_eigvals_;
};

// Uniform selection of min(m, data.size()) distinct samples as landmarks.
std::vector<Eigen::VectorXd> select_landmarks(const Dataset& data, std::size_t m,
                                              std::uint64_t seed);

// Certified displacement bound at sample x. Only Euclidean uncertainty sets
// (p = 2) are supported; the bound is measured in the Euclidean norm with
// R = Lambda^{1/2}.
FeatureBound nystrom_bound(const NystromMap& map, const Eigen::VectorXd& x,
                           const Uncertainty& unc);

}  // namespace rfsvm
