#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "rfsvm/objective.hpp"

namespace rfsvm {

// Outcome of a Monte Carlo stress test of one displacement bound.
struct BoundReport {
  std::uint64_t trials = 0;
  // max over trials of ||R dphi||_pbar / Gamma; 0/0 counts as 0.
  double max_ratio = 0.0;
  // draws with ||R dphi||_pbar > Gamma + 1e-10
  std::uint64_t violations = 0;
};

// Samples admissible input perturbations (first half interior, second half
// surface) and measures the rotated feature displacement against the bound.
BoundReport verify_bound_mc(const FeatureMap& map, const Eigen::VectorXd& x,
                            const Uncertainty& unc, const FeatureBound& bound,
                            std::uint64_t trials, std::uint64_t seed);

// Central-difference check of robust_hinge_subgrad over every coordinate of
// (zeta, b); returns the worst relative error max(|fd - g|) / max(1, |g|).
// Throws KinkError when the evaluation point sits within 10 h of a hinge or
// norm nondifferentiability, where finite differences are meaningless.
double grad_check(const Eigen::VectorXd& zeta, double bias,
                  const Eigen::VectorXd& phi, int y, const FeatureBound& bound,
                  double h);

struct KernelErrorStats {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  std::uint64_t pairs = 0;
};

// |phi(x_i) . phi(x_j) - k(x_i, x_j)| over all unordered pairs, diagonal
// included.
KernelErrorStats kernel_approx_error(const FeatureMap& map,
                                     const std::vector<Eigen::VectorXd>& points,
                                     double sigma);

// Fraction of samples misclassified by at least one admissible perturbation
// found among `trials` draws (half interior, half surface) or at the nominal
// point itself. With gamma = 0 this is exactly the standard error, and it can
// only grow with gamma.
double robust_error(const RobustClassifier& classifier, const Dataset& data,
                    const UncertaintyModel& unc, std::uint64_t trials,
                    std::uint64_t seed);

}  // namespace rfsvm
