#include "rfsvm/objective.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "rfsvm/norms.hpp"

namespace rfsvm {

namespace {

void check_qbar(double qbar) {
  if (!(qbar == 1.0 || qbar == 2.0 || std::isinf(qbar))) {
    throw std::invalid_argument("robust hinge: unsupported feature norm dual");
  }
}

void check_label(int y) {
  if (y != 1 && y != -1) {
    throw std::invalid_argument("robust hinge: label must be +1 or -1");
  }
}

}  // namespace

double decision_score(const RobustClassifier& c, const Eigen::VectorXd& x) {
  return c.zeta.dot(transform(c.map, x)) + c.bias;
}

int predict(const RobustClassifier& c, const Eigen::VectorXd& x) {
  return decision_score(c, x) < 0.0 ? -1 : 1;
}

double robust_hinge(const Eigen::VectorXd& zeta, double bias,
                    const Eigen::VectorXd& phi, int y, const FeatureBound& bound) {
  check_qbar(bound.feature_norm.q);
  check_label(y);
  if (zeta.size() != phi.size()) {
    throw std::invalid_argument("robust_hinge: zeta/phi size mismatch");
  }
  const double margin = static_cast<double>(y) * (zeta.dot(phi) + bias);
  double pen = 0.0;
  if (bound.gamma_feat != 0.0) {
    pen = bound.gamma_feat *
          lp_norm(bound.rotation.apply_transpose(zeta), bound.feature_norm.q);
  }
  return std::max(0.0, 1.0 - margin + pen);
}

std::pair<Eigen::VectorXd, double> robust_hinge_subgrad(const Eigen::VectorXd& zeta,
                                                        double bias,
                                                        const Eigen::VectorXd& phi,
                                                        int y,
                                                        const FeatureBound& bound) {
  const double qbar = bound.feature_norm.q;
  check_qbar(qbar);
  check_label(y);
  if (zeta.size() != phi.size()) {
    throw std::invalid_argument("robust_hinge_subgrad: zeta/phi size mismatch");
  }
  const double yd = static_cast<double>(y);
  const double margin = yd * (zeta.dot(phi) + bias);

  if (bound.gamma_feat == 0.0) {
    if (1.0 - margin < 0.0) {
      return {Eigen::VectorXd::Zero(zeta.size()), 0.0};
    }
    return {-yd * phi, -yd};
  }

  const Eigen::VectorXd u = bound.rotation.apply_transpose(zeta);
  const double arg = 1.0 - margin + bound.gamma_feat * lp_norm(u, qbar);
  if (arg < 0.0) {
    return {Eigen::VectorXd::Zero(zeta.size()), 0.0};
  }

  // s is a subgradient of ||.||_qbar at u; chain through R.
  Eigen::VectorXd s(u.size());
  if (qbar == 2.0) {
    const double nu = u.norm();
    s = nu == 0.0 ? Eigen::VectorXd::Zero(u.size()).eval() : (u / nu).eval();
  } else if (qbar == 1.0) {
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      s[k] = u[k] > 0.0 ? 1.0 : (u[k] < 0.0 ? -1.0 : 0.0);
    }
  } else {
    s.setZero();
    Eigen::Index jstar = 0;
    for (Eigen::Index k = 1; k < u.size(); ++k) {
      if (std::abs(u[k]) > std::abs(u[jstar])) jstar = k;
    }
    s[jstar] = u[jstar] > 0.0 ? 1.0 : (u[jstar] < 0.0 ? -1.0 : 0.0);
  }
  const Eigen::VectorXd g = bound.rotation.apply(s);
  return {(-yd * phi + bound.gamma_feat * g).eval(), -yd};
}

double linear_robust_loss(const Eigen::VectorXd& w, double b,
                          const Eigen::VectorXd& x, int y, const Uncertainty& unc) {
  check_label(y);
  if (w.size() != x.size() || w.size() != unc.sigma_half.dim()) {
    throw std::invalid_argument("linear_robust_loss: size mismatch");
  }
  const double margin = static_cast<double>(y) * (w.dot(x) + b);
  double pen = 0.0;
  if (unc.gamma != 0.0) {
    const double q = dual_exponent(unc.p);
    pen = unc.gamma * lp_norm(unc.sigma_half.apply_transpose(w), q);
  }
  return std::max(0.0, 1.0 - margin + pen);
}

Eigen::VectorXd prox_ridge(const Eigen::VectorXd& w, double eta, double lambda) {
  if (!(eta > 0.0)) throw std::invalid_argument("prox_ridge: eta must be positive");
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("prox_ridge: lambda must be positive");
  }
  return w / (1.0 + eta * lambda);
}

double full_objective(const SolverProblem& problem, const Eigen::VectorXd& zeta,
                      double bias) {
  double total = 0.5 * problem.lambda * zeta.squaredNorm();
  for (std::size_t i = 0; i < problem.size(); ++i) {
    total += robust_hinge(zeta, bias, problem.features[i], problem.labels[i],
                          problem.bounds[i]);
  }
  return total;
}

double full_objective(const SolverProblem& problem, const RobustClassifier& c) {
  return full_objective(problem, c.zeta, c.bias);
}

SolverProblem build_problem(const Dataset& data, const UncertaintyModel& unc,
                            const FeatureMap& map, double pbar, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("build_problem: lambda must be positive and finite");
  }
  if (!unc.is_shared() && unc.count() != data.size()) {
    throw std::invalid_argument(
        "build_problem: per-sample uncertainty count must match the dataset");
  }
  if (input_dim(map) != data.dim()) {
    throw std::invalid_argument("build_problem: map/data dimension mismatch");
  }
  if (unc.at(0).sigma_half.dim() != data.dim()) {
    throw std::invalid_argument("build_problem: uncertainty dimension mismatch");
  }

  SolverProblem problem;
  problem.lambda = lambda;
  problem.labels = data.labels();
  problem.features.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    problem.features.push_back(transform(map, data.sample(i)));
  }

  problem.bounds.reserve(data.size());
  const auto zero_bound = [] {
    return FeatureBound(0.0, FeatureRotation::identity(), NormPair(2.0));
  };
  if (const auto* rff = std::get_if<RffMap>(&map)) {
    if (unc.is_shared() && unc.at(0).gamma == 0.0) {
      for (std::size_t i = 0; i < data.size(); ++i) {
        problem.bounds.push_back(zero_bound());
      }
    } else if (unc.is_shared()) {
      const Eigen::VectorXd cached = sigma_omega_norms(*rff, unc.at(0));
      for (std::size_t i = 0; i < data.size(); ++i) {
        problem.bounds.push_back(
            rff_bound(*rff, data.sample(i), unc.at(0), pbar, cached));
      }
    } else {
      for (std::size_t i = 0; i < data.size(); ++i) {
        problem.bounds.push_back(
            unc.at(i).gamma == 0.0
                ? zero_bound()
                : rff_bound(*rff, data.sample(i), unc.at(i), pbar));
      }
    }
  } else if (const auto* nys = std::get_if<NystromMap>(&map)) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      problem.bounds.push_back(
          unc.at(i).gamma == 0.0
              ? zero_bound()
              : nystrom_bound(*nys, data.sample(i), unc.at(i)));
    }
  } else {
    // Identity map: the input-space set maps through unchanged, so R is
    // Sigma^{1/2} itself (transposed inside the hinge) and the dual norm is
    // fixed by the uncertainty exponent.
    for (std::size_t i = 0; i < data.size(); ++i) {
      const Uncertainty& u = unc.at(i);
      if (u.gamma == 0.0) {
        problem.bounds.emplace_back(0.0, FeatureRotation::identity(), NormPair(2.0));
        continue;
      }
      if (!(u.p == 1.0 || u.p == 2.0 || std::isinf(u.p))) {
        throw std::invalid_argument(
            "build_problem: identity map needs p in {1, 2, inf}");
      }
      FeatureRotation rot =
          u.sigma_half.is_diagonal()
              ? FeatureRotation::diag(std::make_shared<const Eigen::VectorXd>(
                    u.sigma_half.diagonal_entries()))
              : FeatureRotation::dense(std::make_shared<const Eigen::MatrixXd>(
                    u.sigma_half.to_matrix()));
      problem.bounds.emplace_back(u.gamma, std::move(rot), NormPair(u.p));
    }
  }
  return problem;
}

}  // namespace rfsvm
