#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <cstdint>
#include <memory>
#include <random>
#include <variant>
#include <vector>

namespace rfsvm {

// Invertible factor Sigma^{1/2} of an uncertainty ellipsoid
// { dx : ||Sigma^{-1/2} dx||_p <= gamma }. Diagonal factors are the common
// case and keep apply/solve at O(n); dense factors share their LU and norm
// precomputations so copies stay cheap.
class SigmaHalf {
 public:
  static SigmaHalf identity(Eigen::Index n);
  static SigmaHalf scaled_identity(Eigen::Index n, double s);
  static SigmaHalf diagonal(Eigen::VectorXd d);
  static SigmaHalf dense(Eigen::MatrixXd m);

  Eigen::Index dim() const;
  bool is_diagonal() const;
  // Requires is_diagonal().
  const Eigen::VectorXd& diagonal_entries() const;
  Eigen::MatrixXd to_matrix() const;

  // Sigma^{1/2} v
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  // Sigma^{T/2} v
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& v) const;
  // Sigma^{-1/2} v
  Eigen::VectorXd solve(const Eigen::VectorXd& v) const;

  double spectral_norm() const;
  double frobenius_norm() const;

 private:
  struct Diag {
    Eigen::VectorXd d;
  };
  struct Dense {
    Eigen::MatrixXd m;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    double spectral = 0.0;
  };

  explicit SigmaHalf(Diag rep) : rep_(std::move(rep)) {}
  explicit SigmaHalf(std::shared_ptr<const Dense> rep) : rep_(std::move(rep)) {}

  std::variant<Diag, std::shared_ptr<const Dense>> rep_;
};

// Whether perturbations are drawn from the interior of the uncertainty set or
// from its boundary.
enum class BallMode { interior, surface };

// One bounded-uncertainty description ||Sigma^{-1/2} dx||_p <= gamma.
struct Uncertainty {
  SigmaHalf sigma_half;
  double gamma;
  double p;

  Uncertainty(SigmaHalf s, double gamma_, double p_);
};

// Uncertainty shared by every sample, or one description per sample.
class UncertaintyModel {
 public:
  static UncertaintyModel shared(Uncertainty u);
  static UncertaintyModel per_sample(std::vector<Uncertainty> us);

  bool is_shared() const { return shared_; }
  std::size_t count() const { return models_.size(); }
  const Uncertainty& at(std::size_t sample) const;

 private:
  UncertaintyModel(std::vector<Uncertainty> ms, bool shared);
  std::vector<Uncertainty> models_;
  bool shared_;
};

// Draws dx = gamma * Sigma^{1/2} u with u in (interior) or on (surface) the
// unit p-ball. Exact constructions for p in {1, 2, inf}; rejection sampling
// from the enclosing box otherwise.
Eigen::VectorXd sample_uncertainty(const Uncertainty& u, BallMode mode,
                                   std::mt19937_64& rng);
Eigen::VectorXd sample_uncertainty(const Uncertainty& u, BallMode mode,
                                   std::uint64_t seed);

}  // namespace rfsvm
