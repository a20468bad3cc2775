#pragma once

#include <Eigen/Core>
#include <limits>

namespace rfsvm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Hoelder conjugate q with 1/p + 1/q = 1. p = 1 maps to infinity and back.
// Throws std::invalid_argument for p < 1 or NaN.
double dual_exponent(double p);

// ||v||_p for p in [1, inf]. Scales by the max entry first so large inputs
// do not overflow pow() for finite p.
double lp_norm(const Eigen::VectorXd& v, double p);

// A norm exponent together with its dual, kept in sync by construction.
struct NormPair {
  double p;
  double q;
  explicit NormPair(double exponent);
};

}  // namespace rfsvm
