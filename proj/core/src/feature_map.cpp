#include "rfsvm/feature_map.hpp"

#include <stdexcept>

namespace rfsvm {

Eigen::VectorXd IdentityMap::transform(const Eigen::VectorXd& x) const {
  if (x.size() != dim) {
    throw std::invalid_argument("IdentityMap: input dimension mismatch");
  }
  return x;
}

Eigen::VectorXd transform(const FeatureMap& map, const Eigen::VectorXd& x) {
  return std::visit([&](const auto& m) { return m.transform(x); }, map);
}

Eigen::Index input_dim(const FeatureMap& map) {
  return std::visit([](const auto& m) -> Eigen::Index {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, IdentityMap>) {
      return m.dim;
    } else {
      return m.input_dim();
    }
  }, map);
}

Eigen::Index output_dim(const FeatureMap& map) {
  return std::visit([](const auto& m) -> Eigen::Index {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, IdentityMap>) {
      return m.dim;
    } else {
      return m.output_dim();
    }
  }, map);
}

}  // namespace rfsvm
