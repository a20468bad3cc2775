#include "rfsvm/uncertainty.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "rfsvm/norms.hpp"
#include "rfsvm/rng.hpp"

namespace rfsvm {

namespace {

void check_dim(Eigen::Index n) {
  if (n <= 0) throw std::invalid_argument("SigmaHalf: dimension must be positive");
}

}  // namespace

SigmaHalf SigmaHalf::identity(Eigen::Index n) {
  check_dim(n);
  return SigmaHalf(Diag{Eigen::VectorXd::Ones(n)});
}

SigmaHalf SigmaHalf::scaled_identity(Eigen::Index n, double s) {
  check_dim(n);
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("SigmaHalf: scale must be positive and finite");
  }
  return SigmaHalf(Diag{Eigen::VectorXd::Constant(n, s)});
}

SigmaHalf SigmaHalf::diagonal(Eigen::VectorXd d) {
  check_dim(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0) || !std::isfinite(d[i])) {
      throw std::invalid_argument(
          "SigmaHalf: diagonal entries must be positive and finite");
    }
  }
  return SigmaHalf(Diag{std::move(d)});
}

SigmaHalf SigmaHalf::dense(Eigen::MatrixXd m) {
  check_dim(m.rows());
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("SigmaHalf: matrix must be square");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("SigmaHalf: matrix entries must be finite");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(m.rows() - 1);
  if (!(smin > smax * 1e-12) || smax == 0.0) {
    throw std::invalid_argument("SigmaHalf: matrix must be invertible");
  }
  auto rep = std::make_shared<Dense>();
  rep->m = std::move(m);
  rep->lu = Eigen::PartialPivLU<Eigen::MatrixXd>(rep->m);
  rep->spectral = smax;
  return SigmaHalf(std::shared_ptr<const Dense>(std::move(rep)));
}

Eigen::Index SigmaHalf::dim() const {
  if (const auto* d = std::get_if<Diag>(&rep_)) return d->d.size();
  return std::get<std::shared_ptr<const Dense>>(rep_)->m.rows();
}

bool SigmaHalf::is_diagonal() const { return std::holds_alternative<Diag>(rep_); }

const Eigen::VectorXd& SigmaHalf::diagonal_entries() const {
  if (const auto* d = std::get_if<Diag>(&rep_)) return d->d;
  throw std::logic_error("SigmaHalf: diagonal_entries() on a dense factor");
}

Eigen::MatrixXd SigmaHalf::to_matrix() const {
  if (const auto* d = std::get_if<Diag>(&rep_)) {
    return d->d.asDiagonal().toDenseMatrix();
  }
  return std::get<std::shared_ptr<const Dense>>(rep_)->m;
}

Eigen::VectorXd SigmaHalf::apply(const Eigen::VectorXd& v) const {
  if (v.size() != dim()) throw std::invalid_argument("SigmaHalf: size mismatch");
  if (const auto* d = std::get_if<Diag>(&rep_)) {
    return d->d.cwiseProduct(v);
  }
  return std::get<std::shared_ptr<const Dense>>(rep_)->m * v;
}

Eigen::VectorXd SigmaHalf::apply_transpose(const Eigen::VectorXd& v) const {
  if (v.size() != dim()) throw std::invalid_argument("SigmaHalf: size mismatch");
  if (const auto* d = std::get_if<Diag>(&rep_)) {
    return d->d.cwiseProduct(v);
  }
  return std::get<std::shared_ptr<const Dense>>(rep_)->m.transpose() * v;
}

Eigen::VectorXd SigmaHalf::solve(const Eigen::VectorXd& v) const {
  if (v.size() != dim()) throw std::invalid_argument("SigmaHalf: size mismatch");
  if (const auto* d = std::get_if<Diag>(&rep_)) {
    return v.cwiseQuotient(d->d);
  }
  return std::get<std::shared_ptr<const Dense>>(rep_)->lu.solve(v);
}

double SigmaHalf::spectral_norm() const {
  if (const auto* d = std::get_if<Diag>(&rep_)) return d->d.maxCoeff();
  return std::get<std::shared_ptr<const Dense>>(rep_)->spectral;
}

double SigmaHalf::frobenius_norm() const {
  if (const auto* d = std::get_if<Diag>(&rep_)) return d->d.norm();
  return std::get<std::shared_ptr<const Dense>>(rep_)->m.norm();
}

Uncertainty::Uncertainty(SigmaHalf s, double gamma_, double p_)
    : sigma_half(std::move(s)), gamma(gamma_), p(p_) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("Uncertainty: gamma must be finite and >= 0");
  }
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("Uncertainty: p must satisfy p >= 1");
  }
}

UncertaintyModel::UncertaintyModel(std::vector<Uncertainty> ms, bool shared)
    : models_(std::move(ms)), shared_(shared) {}

UncertaintyModel UncertaintyModel::shared(Uncertainty u) {
  return UncertaintyModel({std::move(u)}, true);
}

UncertaintyModel UncertaintyModel::per_sample(std::vector<Uncertainty> us) {
  if (us.empty()) {
    throw std::invalid_argument("UncertaintyModel: per-sample list is empty");
  }
  const Eigen::Index n = us.front().sigma_half.dim();
  for (const auto& u : us) {
    if (u.sigma_half.dim() != n) {
      throw std::invalid_argument("UncertaintyModel: inconsistent dimensions");
    }
  }
  return UncertaintyModel(std::move(us), false);
}

const Uncertainty& UncertaintyModel::at(std::size_t sample) const {
  if (shared_) return models_.front();
  if (sample >= models_.size()) {
    throw std::out_of_range("UncertaintyModel: sample index out of range");
  }
  return models_[sample];
}

namespace {

// Point in (interior) or on (surface) the unit p-ball of R^n. For p = 1 the
// surface draw uses exponential spacings (a Dirichlet simplex point) with
// random signs, for p = 2 a normalized Gaussian, for p = inf a uniform box
// with one coordinate pinned to +-1. Interior draws scale the surface point
// by U^(1/n), except p = inf where the box is already uniform. Other p fall
// back to rejection from the enclosing box, which is uniform on acceptance.
Eigen::VectorXd unit_p_ball_point(Eigen::Index n, double p, BallMode mode,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni01(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);

  if (std::isinf(p)) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = sym(rng);
    if (mode == BallMode::surface) {
      std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
      const Eigen::Index j = pick(rng);
      v[j] = uni01(rng) < 0.5 ? -1.0 : 1.0;
    }
    return v;
  }

  Eigen::VectorXd dir(n);
  if (p == 2.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double nv = 0.0;
    do {
      for (Eigen::Index i = 0; i < n; ++i) dir[i] = gauss(rng);
      nv = dir.norm();
    } while (nv == 0.0);
    dir /= nv;
  } else if (p == 1.0) {
    std::exponential_distribution<double> expo(1.0);
    double s = 0.0;
    do {
      s = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        dir[i] = expo(rng);
        s += dir[i];
      }
    } while (s == 0.0);
    dir /= s;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (uni01(rng) < 0.5) dir[i] = -dir[i];
    }
  } else {
    for (;;) {
      for (Eigen::Index i = 0; i < n; ++i) dir[i] = sym(rng);
      const double nv = lp_norm(dir, p);
      if (nv > 0.0 && nv <= 1.0) {
        if (mode == BallMode::interior) return dir;
        return dir / nv;
      }
    }
  }

  if (mode == BallMode::interior) {
    dir *= std::pow(uni01(rng), 1.0 / static_cast<double>(n));
  }
  return dir;
}

}  // namespace

Eigen::VectorXd sample_uncertainty(const Uncertainty& u, BallMode mode,
                                   std::mt19937_64& rng) {
  const Eigen::Index n = u.sigma_half.dim();
  if (u.gamma == 0.0) return Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd pt = unit_p_ball_point(n, u.p, mode, rng);
  return u.sigma_half.apply(pt * u.gamma);
}

Eigen::VectorXd sample_uncertainty(const Uncertainty& u, BallMode mode,
                                   std::uint64_t seed) {
  auto rng = make_rng(seed);
  return sample_uncertainty(u, mode, rng);
}

}  // namespace rfsvm
