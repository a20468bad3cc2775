#include "rfsvm/feature_bound.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rfsvm {

RotationBlocks::RotationBlocks(Eigen::VectorXd angles) : angles_(std::move(angles)) {
  if (angles_.size() == 0) {
    throw std::invalid_argument("RotationBlocks: at least one block required");
  }
  if (!angles_.allFinite()) {
    throw std::invalid_argument("RotationBlocks: angles must be finite");
  }
}

Eigen::VectorXd RotationBlocks::apply(const Eigen::VectorXd& v) const {
  if (v.size() != 2 * angles_.size()) {
    throw std::invalid_argument("RotationBlocks: size mismatch");
  }
  Eigen::VectorXd out(v.size());
  for (Eigen::Index j = 0; j < angles_.size(); ++j) {
    const double c = std::cos(angles_[j]);
    const double s = std::sin(angles_[j]);
    out[2 * j] = c * v[2 * j] + s * v[2 * j + 1];
    out[2 * j + 1] = -s * v[2 * j] + c * v[2 * j + 1];
  }
  return out;
}

Eigen::VectorXd RotationBlocks::apply_transpose(const Eigen::VectorXd& v) const {
  if (v.size() != 2 * angles_.size()) {
    throw std::invalid_argument("RotationBlocks: size mismatch");
  }
  Eigen::VectorXd out(v.size());
  for (Eigen::Index j = 0; j < angles_.size(); ++j) {
    const double c = std::cos(angles_[j]);
    const double s = std::sin(angles_[j]);
    out[2 * j] = c * v[2 * j] - s * v[2 * j + 1];
    out[2 * j + 1] = s * v[2 * j] + c * v[2 * j + 1];
  }
  return out;
}

FeatureRotation FeatureRotation::identity() { return FeatureRotation(Rep{}); }

FeatureRotation FeatureRotation::blocks(Eigen::VectorXd angles) {
  return FeatureRotation(Rep{RotationBlocks(std::move(angles))});
}

FeatureRotation FeatureRotation::diag(std::shared_ptr<const Eigen::VectorXd> scale) {
  if (!scale || scale->size() == 0) {
    throw std::invalid_argument("FeatureRotation: empty diagonal");
  }
  if (!scale->allFinite()) {
    throw std::invalid_argument("FeatureRotation: diagonal must be finite");
  }
  return FeatureRotation(Rep{std::move(scale)});
}

FeatureRotation FeatureRotation::dense(std::shared_ptr<const Eigen::MatrixXd> m) {
  if (!m || m->size() == 0) {
    throw std::invalid_argument("FeatureRotation: empty matrix");
  }
  if (!m->allFinite()) {
    throw std::invalid_argument("FeatureRotation: matrix must be finite");
  }
  return FeatureRotation(Rep{std::move(m)});
}

FeatureRotation::Kind FeatureRotation::kind() const {
  switch (rep_.index()) {
    case 0: return Kind::identity;
    case 1: return Kind::blocks;
    case 2: return Kind::diag;
    default: return Kind::dense;
  }
}

Eigen::VectorXd FeatureRotation::apply(const Eigen::VectorXd& v) const {
  switch (rep_.index()) {
    case 0: return v;
    case 1: return std::get<RotationBlocks>(rep_).apply(v);
    case 2: {
      const auto& d = *std::get<2>(rep_);
      if (v.size() != d.size()) {
        throw std::invalid_argument("FeatureRotation: size mismatch");
      }
      return d.cwiseProduct(v);
    }
    default: {
      const auto& m = *std::get<3>(rep_);
      if (v.size() != m.cols()) {
        throw std::invalid_argument("FeatureRotation: size mismatch");
      }
      return m * v;
    }
  }
}

Eigen::VectorXd FeatureRotation::apply_transpose(const Eigen::VectorXd& v) const {
  switch (rep_.index()) {
    case 0: return v;
    case 1: return std::get<RotationBlocks>(rep_).apply_transpose(v);
    case 2: {
      const auto& d = *std::get<2>(rep_);
      if (v.size() != d.size()) {
        throw std::invalid_argument("FeatureRotation: size mismatch");
      }
      return d.cwiseProduct(v);
    }
    default: {
      const auto& m = *std::get<3>(rep_);
      if (v.size() != m.rows()) {
        throw std::invalid_argument("FeatureRotation: size mismatch");
      }
      return m.transpose() * v;
    }
  }
}

double FeatureRotation::max_row_norm() const {
  switch (rep_.index()) {
    case 0: return 1.0;
    case 1: return 1.0;
    case 2: return std::get<2>(rep_)->cwiseAbs().maxCoeff();
    default: return std::get<3>(rep_)->rowwise().norm().maxCoeff();
  }
}

const RotationBlocks& FeatureRotation::as_blocks() const {
  return std::get<RotationBlocks>(rep_);
}

const Eigen::VectorXd& FeatureRotation::as_diag() const { return *std::get<2>(rep_); }

const Eigen::MatrixXd& FeatureRotation::as_dense() const { return *std::get<3>(rep_); }

FeatureBound::FeatureBound(double g, FeatureRotation r, NormPair n)
    : gamma_feat(g), rotation(std::move(r)), feature_norm(n) {
  if (!(gamma_feat >= 0.0)) {
    throw std::invalid_argument("FeatureBound: Gamma must be >= 0");
  }
}

}  // namespace rfsvm
