#pragma once

#include <Eigen/Core>
#include <memory>
#include <variant>

#include "rfsvm/norms.hpp"

namespace rfsvm {

// Block-diagonal 2x2 alignment rotations. Block j applies the transpose of a
// rotation by angles[j], i.e. it rotates the j-th (cos, sin) feature pair back
// by the phase of the nominal sample.
class RotationBlocks {
 public:
  explicit RotationBlocks(Eigen::VectorXd angles);

  Eigen::Index blocks() const { return angles_.size(); }
  const Eigen::VectorXd& angles() const { return angles_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& v) const;

 private:
  Eigen::VectorXd angles_;
};

// The matrix R of a feature-space displacement bound ||R dphi|| <= Gamma.
// Identity for maps with no structure to exploit, alignment rotations for
// trigonometric feature pairs, a diagonal eigenvalue scaling for low-rank
// maps, or a plain dense matrix for the linear case. Heavy payloads are
// shared so per-sample bounds that reuse one R stay cheap to copy.
class FeatureRotation {
 public:
  enum class Kind { identity, blocks, diag, dense };

  static FeatureRotation identity();
  static FeatureRotation blocks(Eigen::VectorXd angles);
  static FeatureRotation diag(std::shared_ptr<const Eigen::VectorXd> scale);
  static FeatureRotation dense(std::shared_ptr<const Eigen::MatrixXd> m);

  Kind kind() const;

  // R v
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  // R^T v
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& v) const;

  // max_k ||row_k(R)||_2, an upper bound on how fast R^T zeta can move per
  // unit change of one zeta coordinate. Identity maps report 1.
  double max_row_norm() const;

  const RotationBlocks& as_blocks() const;
  const Eigen::VectorXd& as_diag() const;
  const Eigen::MatrixXd& as_dense() const;

 private:
  using Rep = std::variant<std::monostate, RotationBlocks,
                           std::shared_ptr<const Eigen::VectorXd>,
                           std::shared_ptr<const Eigen::MatrixXd>>;
  explicit FeatureRotation(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

// Certified feature-space displacement bound for one sample:
// ||R dphi||_pbar <= Gamma for every admissible input perturbation.
struct FeatureBound {
  double gamma_feat;
  FeatureRotation rotation;
  NormPair feature_norm;

  FeatureBound(double g, FeatureRotation r, NormPair n);
};

}  // namespace rfsvm
