#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "rfsvm/dataset.hpp"
#include "rfsvm/feature_bound.hpp"
#include "rfsvm/feature_map.hpp"
#include "rfsvm/uncertainty.hpp"

namespace rfsvm {

// Trained classifier: feature-space weights plus the map needed to score new
// inputs.
struct RobustClassifier {
  Eigen::VectorXd zeta;
  double bias = 0.0;
  FeatureMap map;
};

double decision_score(const RobustClassifier& c, const Eigen::VectorXd& x);
// sign of the decision score; exact zero classifies as +1.
int predict(const RobustClassifier& c, const Eigen::VectorXd& x);

// Fully assembled training problem: transformed features, labels, per-sample
// displacement bounds and the ridge weight.
struct SolverProblem {
  std::vector<Eigen::VectorXd> features;
  std::vector<int> labels;
  std::vector<FeatureBound> bounds;
  double lambda = 1.0;

  std::size_t size() const { return features.size(); }
};

// Transforms every sample and attaches its displacement bound. pbar selects
// the feature-space norm for trigonometric feature pairs; low-rank maps are
// fixed to pbar = 2 and the identity map inherits the uncertainty exponent,
// so pbar is ignored for both.
SolverProblem build_problem(const Dataset& data, const UncertaintyModel& unc,
                            const FeatureMap& map, double pbar, double lambda);

// Robust hinge max{0, 1 - y (zeta . phi + b) + Gamma ||R^T zeta||_qbar}.
double robust_hinge(const Eigen::VectorXd& zeta, double bias,
                    const Eigen::VectorXd& phi, int y, const FeatureBound& bound);

// One element of the subdifferential of the robust hinge in (zeta, b). Ties
// at the hinge kink take the active branch, the Euclidean norm term uses the
// zero subgradient at the origin, and the max norm (qbar = inf) picks the
// lowest maximizing index.
std::pair<Eigen::VectorXd, double> robust_hinge_subgrad(const Eigen::VectorXd& zeta,
                                                        double bias,
                                                        const Eigen::VectorXd& phi,
                                                        int y,
                                                        const FeatureBound& bound);

// Input-space robust hinge max{0, 1 - y (w . x + b) + gamma ||Sigma^{T/2} w||_q}
// with q dual to unc.p.
double linear_robust_loss(const Eigen::VectorXd& w, double b,
                          const Eigen::VectorXd& x, int y, const Uncertainty& unc);

// Proximal operator of eta * (lambda / 2) ||.||^2: plain shrinkage.
Eigen::VectorXd prox_ridge(const Eigen::VectorXd& w, double eta, double lambda);

// (lambda / 2) ||zeta||^2 + sum_i robust_hinge_i, summed in sample order.
double full_objective(const SolverProblem& problem, const Eigen::VectorXd& zeta,
                      double bias);
double full_objective(const SolverProblem& problem, const RobustClassifier& c);

}  // namespace rfsvm
