#include "rfsvm/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace rfsvm {

double dual_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("dual_exponent: exponent must satisfy p >= 1");
  }
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(const Eigen::VectorXd& v, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("lp_norm: exponent must satisfy p >= 1");
  }
  if (v.size() == 0) return 0.0;
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  if (p == 1.0) return v.cwiseAbs().sum();
  if (p == 2.0) return v.norm();
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0 || !std::isfinite(m)) return m;
  return m * std::pow((v.cwiseAbs() / m).array().pow(p).sum(), 1.0 / p);
}

NormPair::NormPair(double exponent) : p(exponent), q(dual_exponent(exponent)) {}

}  // namespace rfsvm
