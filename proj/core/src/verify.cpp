#include "rfsvm/verify.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rfsvm/errors.hpp"
#include "rfsvm/kernel.hpp"
#include "rfsvm/norms.hpp"
#include "rfsvm/rng.hpp"

namespace rfsvm {

BoundReport verify_bound_mc(const FeatureMap& map, const Eigen::VectorXd& x,
                            const Uncertainty& unc, const FeatureBound& bound,
                            std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) {
    throw std::invalid_argument("verify_bound_mc: trials must be >= 1");
  }
  if (x.size() != input_dim(map)) {
    throw std::invalid_argument("verify_bound_mc: dimension mismatch");
  }
  constexpr double kTol = 1e-10;
  const Eigen::VectorXd phi0 = transform(map, x);
  auto rng = make_rng(seed);

  BoundReport report;
  report.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const BallMode mode = t < trials / 2 ? BallMode::interior : BallMode::surface;
    const Eigen::VectorXd dx = sample_uncertainty(unc, mode, rng);
    const Eigen::VectorXd dphi = transform(map, x + dx) - phi0;
    const double norm =
        lp_norm(bound.rotation.apply(dphi), bound.feature_norm.p);
    if (norm > bound.gamma_feat + kTol) ++report.violations;
    double ratio = 0.0;
    if (bound.gamma_feat > 0.0) {
      ratio = norm / bound.gamma_feat;
    } else if (norm > 0.0) {
      ratio = kInf;
    }
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  return report;
}

double grad_check(const Eigen::VectorXd& zeta, double bias,
                  const Eigen::VectorXd& phi, int y, const FeatureBound& bound,
                  double h) {
  if (!(h > 0.0)) throw std::invalid_argument("grad_check: h must be positive");
  const double qbar = bound.feature_norm.q;
  const double yd = static_cast<double>(y);

  // Reject points within 10 h of a kink. The hinge argument moves at most
  // scale units per unit parameter change; the norm term inside it at most
  // max_row_norm per unit change of one zeta coordinate.
  const double rmax = bound.rotation.max_row_norm();
  const double scale = 1.0 + phi.norm() + bound.gamma_feat * rmax;
  double pen = 0.0;
  if (bound.gamma_feat != 0.0) {
    pen = bound.gamma_feat * lp_norm(bound.rotation.apply_transpose(zeta), qbar);
  }
  const double arg = 1.0 - yd * (zeta.dot(phi) + bias) + pen;
  if (std::abs(arg) <= 10.0 * h * scale) {
    throw KinkError("grad_check: point too close to the hinge kink");
  }
  if (arg > 0.0 && bound.gamma_feat > 0.0) {
    const Eigen::VectorXd u = bound.rotation.apply_transpose(zeta);
    const double guard = 10.0 * h * rmax;
    if (qbar == 2.0 && u.norm() <= guard) {
      throw KinkError("grad_check: norm term too close to the origin");
    }
    if (qbar == 1.0) {
      for (Eigen::Index k = 0; k < u.size(); ++k) {
        if (std::abs(u[k]) <= guard) {
          throw KinkError("grad_check: sign change too close at coordinate " +
                          std::to_string(k));
        }
      }
    }
    if (std::isinf(qbar)) {
      double top1 = -1.0, top2 = -1.0;
      for (Eigen::Index k = 0; k < u.size(); ++k) {
        const double a = std::abs(u[k]);
        if (a > top1) {
          top2 = top1;
          top1 = a;
        } else if (a > top2) {
          top2 = a;
        }
      }
      if (top1 <= guard || (u.size() > 1 && top1 - top2 <= 2.0 * guard)) {
        throw KinkError("grad_check: max norm argmax is not isolated");
      }
    }
  }

  const auto [gz, gb] = robust_hinge_subgrad(zeta, bias, phi, y, bound);
  double worst = 0.0;
  Eigen::VectorXd zp = zeta;
  for (Eigen::Index k = 0; k < zeta.size(); ++k) {
    zp[k] = zeta[k] + h;
    const double fp = robust_hinge(zp, bias, phi, y, bound);
    zp[k] = zeta[k] - h;
    const double fm = robust_hinge(zp, bias, phi, y, bound);
    zp[k] = zeta[k];
    const double fd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - gz[k]) / std::max(1.0, std::abs(gz[k])));
  }
  const double fdb = (robust_hinge(zeta, bias + h, phi, y, bound) -
                      robust_hinge(zeta, bias - h, phi, y, bound)) /
                     (2.0 * h);
  worst = std::max(worst, std::abs(fdb - gb) / std::max(1.0, std::abs(gb)));
  return worst;
}

KernelErrorStats kernel_approx_error(const FeatureMap& map,
                                     const std::vector<Eigen::VectorXd>& points,
                                     double sigma) {
  if (points.empty()) {
    throw std::invalid_argument("kernel_approx_error: no points");
  }
  std::vector<Eigen::VectorXd> phis;
  phis.reserve(points.size());
  for (const auto& p : points) phis.push_back(transform(map, p));

  KernelErrorStats stats;
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i; j < points.size(); ++j) {
      const double approx = phis[i].dot(phis[j]);
      const double exact = gaussian_kernel(points[i], points[j], sigma);
      const double err = std::abs(approx - exact);
      stats.max_abs = std::max(stats.max_abs, err);
      total += err;
      ++stats.pairs;
    }
  }
  stats.mean_abs = total / static_cast<double>(stats.pairs);
  return stats;
}

double robust_error(const RobustClassifier& classifier, const Dataset& data,
                    const UncertaintyModel& unc, std::uint64_t trials,
                    std::uint64_t seed) {
  if (!unc.is_shared() && unc.count() != data.size()) {
    throw std::invalid_argument(
        "robust_error: per-sample uncertainty count must match the dataset");
  }
  auto rng = make_rng(seed);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Uncertainty& u = unc.at(i);
    // The nominal point is itself admissible, so the robust error dominates
    // the standard error.
    bool mis = predict(classifier, data.sample(i)) != data.label(i);
    for (std::uint64_t t = 0; t < trials && !mis; ++t) {
      const BallMode mode =
          t < trials / 2 ? BallMode::interior : BallMode::surface;
      const Eigen::VectorXd dx = sample_uncertainty(u, mode, rng);
      mis = predict(classifier, data.sample(i) + dx) != data.label(i);
    }
    if (mis) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

}  // namespace rfsvm
