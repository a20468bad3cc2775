#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

namespace rfsvm {

// Gaussian kernel k(x, z) = exp(-||x - z||^2 / (2 sigma^2)).
inline double gaussian_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                              double sigma) {
  if (x.size() != z.size()) {
    throw std::invalid_argument("gaussian_kernel: dimension mismatch");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_kernel: sigma must be positive");
  }
  return std::exp(-(x - z).squaredNorm() / (2.0 * sigma * sigma));
}

}  // namespace rfsvm
