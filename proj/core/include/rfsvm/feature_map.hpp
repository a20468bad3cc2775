#pragma once

#include <Eigen/Core>
#include <variant>

#include "rfsvm/nystrom.hpp"
#include "rfsvm/rff.hpp"

namespace rfsvm {

// Identity feature map: phi(x) = x, the plain linear classifier case.
struct IdentityMap {
  Eigen::Index dim = 0;
  Eigen::VectorXd transform(const Eigen::VectorXd& x) const;
};

using FeatureMap = std::variant<IdentityMap, RffMap, NystromMap>;

Eigen::VectorXd transform(const FeatureMap& map, const Eigen::VectorXd& x);
Eigen::Index input_dim(const FeatureMap& map);
Eigen::Index output_dim(const FeatureMap& map);

}  // namespace rfsvm
