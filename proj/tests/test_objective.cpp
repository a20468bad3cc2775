#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "rfsvm/objective.hpp"
#include "rfsvm/rng.hpp"

using namespace rfsvm;

namespace {

Eigen::VectorXd tiny_zeta() {
  Eigen::VectorXd z(4);
  z << 0.5, -1.25, 2.0, 0.75;
  return z;
}

Eigen::VectorXd tiny_phi() {
  Eigen::VectorXd p(4);
  p << 0.2, -0.1, 0.6, 0.4;
  return p;
}

FeatureRotation tiny_rotation() {
  Eigen::VectorXd angles(2);
  angles << 0.9, -1.7;
  return FeatureRotation::blocks(angles);
}

FeatureBound tiny_bound(double pbar) {
  return FeatureBound(0.8, tiny_rotation(), NormPair(pbar));
}

}  // namespace

TEST_CASE("robust hinge matches hand-computed values") {
  const Eigen::VectorXd zeta = tiny_zeta();
  const Eigen::VectorXd phi = tiny_phi();
  const double bias = -0.3;

  // qbar = 2 (pbar = 2), qbar = 1 (pbar = inf), qbar = inf (pbar = 1)
  CHECK(robust_hinge(zeta, bias, phi, 1, tiny_bound(2.0)) ==
        doctest::Approx(1.5949009876724156).epsilon(1e-14));
  CHECK(robust_hinge(zeta, bias, phi, 1, tiny_bound(kInf)) ==
        doctest::Approx(2.9680681900553265).epsilon(1e-14));
  CHECK(robust_hinge(zeta, bias, phi, 1, tiny_bound(1.0)) ==
        doctest::Approx(1.2389703933012646).epsilon(1e-14));
}

TEST_CASE("alignment rotations preserve the euclidean norm") {
  const Eigen::VectorXd zeta = tiny_zeta();
  const Eigen::VectorXd u = tiny_rotation().apply_transpose(zeta);
  CHECK(u.norm() == doctest::Approx(zeta.norm()).epsilon(1e-14));
  // and R R^T = I
  const Eigen::VectorXd back = tiny_rotation().apply(u);
  CHECK((back - zeta).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("hinge inactive branch clamps to zero") {
  Eigen::VectorXd zeta(2), phi(2);
  zeta << 3.0, 0.0;
  phi << 1.0, 0.0;
  const FeatureBound bound(0.1, FeatureRotation::identity(), NormPair(2.0));
  CHECK(robust_hinge(zeta, 0.0, phi, 1, bound) == 0.0);
  // flipping the label reactivates it
  CHECK(robust_hinge(zeta, 0.0, phi, -1, bound) > 3.0);

  const auto [gz, gb] = robust_hinge_subgrad(zeta, 0.0, phi, 1, bound);
  CHECK(gz.norm() == 0.0);
  CHECK(gb == 0.0);
}

TEST_CASE("zero bound reduces to the classic hinge") {
  const FeatureBound bound(0.0, FeatureRotation::identity(), NormPair(2.0));
  Eigen::VectorXd zeta(2), phi(2);
  zeta << 2.0, -1.0;
  phi << 0.5, 0.5;
  for (double b : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
    for (int y : {1, -1}) {
      const double margin = y * (zeta.dot(phi) + b);
      CHECK(robust_hinge(zeta, b, phi, y, bound) == std::max(0.0, 1.0 - margin));
    }
  }
  // exact kink: the active branch is chosen
  const double b_kink = 1.0 - zeta.dot(phi);
  CHECK(robust_hinge(zeta, b_kink, phi, 1, bound) == 0.0);
  const auto [gz, gb] = robust_hinge_subgrad(zeta, b_kink, phi, 1, bound);
  CHECK(gz == (-phi).eval());
  CHECK(gb == -1.0);
}

TEST_CASE("norm subgradient conventions") {
  Eigen::VectorXd phi(2);
  phi << 0.2, -0.4;

  SUBCASE("euclidean norm at the origin") {
    const FeatureBound bound(0.3, FeatureRotation::identity(), NormPair(2.0));
    const Eigen::VectorXd zeta = Eigen::VectorXd::Zero(2);
    const auto [gz, gb] = robust_hinge_subgrad(zeta, 0.0, phi, 1, bound);
    CHECK(gz == (-phi).eval());
    CHECK(gb == -1.0);
  }

  SUBCASE("max norm picks the lowest maximizing index") {
    // qbar = inf comes from pbar = 1
    const FeatureBound bound(0.5, FeatureRotation::identity(), NormPair(1.0));
    Eigen::VectorXd zeta(3), phi3(3);
    zeta << 2.0, -3.0, 3.0;
    phi3 << 0.1, 0.1, 0.1;
    const auto [gz, gb] = robust_hinge_subgrad(zeta, 0.0, phi3, 1, bound);
    Eigen::VectorXd expected = -phi3;
    expected[1] += 0.5 * -1.0;  // index 1 wins the |u| tie against index 2
    CHECK(gz == expected);
    CHECK(gb == -1.0);
  }

  SUBCASE("sign vector treats exact zeros as zero") {
    const FeatureBound bound(0.5, FeatureRotation::identity(), NormPair(kInf));
    Eigen::VectorXd zeta(2);
    zeta << 0.0, 1.5;
    const auto [gz, gb] = robust_hinge_subgrad(zeta, 0.0, phi, 1, bound);
    Eigen::VectorXd expected = -phi;
    expected[1] += 0.5;
    CHECK(gz == expected);
    CHECK(gb == -1.0);
  }
}

TEST_CASE("subgradients are directionally consistent with the loss") {
  // f(theta + t d) >= f(theta) + t g . d for subgradients of a convex f
  auto rng = make_rng(909);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double pbar : {1.0, 2.0, kInf}) {
    const FeatureBound bound(0.6, tiny_rotation(), NormPair(pbar));
    for (int rep = 0; rep < 50; ++rep) {
      Eigen::VectorXd zeta(4), phi(4), dz(4);
      for (int i = 0; i < 4; ++i) {
        zeta[i] = gauss(rng);
        phi[i] = gauss(rng);
        dz[i] = gauss(rng);
      }
      const double b = gauss(rng), db = gauss(rng);
      const int y = rep % 2 == 0 ? 1 : -1;
      const double f0 = robust_hinge(zeta, b, phi, y, bound);
      const auto [gz, gb] = robust_hinge_subgrad(zeta, b, phi, y, bound);
      for (double t : {1e-3, 0.1, 1.0}) {
        const double f1 = robust_hinge(zeta + t * dz, b + t * db, phi, y, bound);
        CHECK(f1 >= f0 + t * (gz.dot(dz) + gb * db) - 1e-9);
      }
    }
  }
}

TEST_CASE("robust hinge dominates the nominal hinge") {
  auto rng = make_rng(910);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const FeatureBound robustatk(0.7, tiny_rotation(), NormPair(2.0));
  const FeatureBound nominal(0.0, tiny_rotation(), NormPair(2.0));
  for (int rep = 0; rep < 100; ++rep) {
    Eigen::VectorXd zeta(4), phi(4);
    for (int i = 0; i < 4; ++i) {
      zeta[i] = gauss(rng);
      phi[i] = gauss(rng);
    }
    const double b = gauss(rng);
    const int y = rep % 2 == 0 ? 1 : -1;
    CHECK(robust_hinge(zeta, b, phi, y, robustatk) >= 0.0);
    CHECK(robust_hinge(zeta, b, phi, y, robustatk) >=
          robust_hinge(zeta, b, phi, y, nominal));
  }
}

TEST_CASE("linear robust loss matches hand-computed values") {
  Eigen::VectorXd w(2), x(2);
  w << 1.5, -2.0;
  x << 0.4, 0.8;
  Eigen::VectorXd d(2);
  d << 0.5, 2.0;
  const SigmaHalf sh = SigmaHalf::diagonal(d);
  CHECK(linear_robust_loss(w, 0.25, x, -1, Uncertainty(sh, 0.6, 1.0)) ==
        doctest::Approx(2.65).epsilon(1e-14));
  CHECK(linear_robust_loss(w, 0.25, x, -1, Uncertainty(sh, 0.6, 2.0)) ==
        doctest::Approx(2.691823089414956).epsilon(1e-14));
  // zero radius reduces to the plain hinge
  const double margin = -1.0 * (w.dot(x) + 0.25);
  CHECK(linear_robust_loss(w, 0.25, x, -1, Uncertainty(sh, 0.0, 2.0)) ==
        std::max(0.0, 1.0 - margin));
}

TEST_CASE("ridge prox shrinks without rotating") {
  Eigen::VectorXd w(2);
  w << 2.0, -4.0;
  const Eigen::VectorXd p = prox_ridge(w, 0.5, 0.2);
  CHECK(p == (w / 1.1).eval());
  // vanishing regularization leaves the point untouched
  CHECK(prox_ridge(w, 1.0, 1e-300) == w);
  CHECK_THROWS_AS(prox_ridge(w, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(prox_ridge(w, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("full objective matches hand-computed values") {
  SolverProblem problem;
  problem.lambda = 0.05;
  problem.features = {tiny_phi(), Eigen::VectorXd(4)};
  problem.features[1] << -0.3, 0.2, -0.5, 0.1;
  problem.labels = {1, -1};
  problem.bounds = {tiny_bound(2.0), tiny_bound(2.0)};
  CHECK(full_objective(problem, tiny_zeta(), -0.3) ==
        doctest::Approx(3.1491769753448312).epsilon(1e-14));
}

TEST_CASE("problem assembly wires features and bounds together") {
  auto rng = make_rng(911);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> xs;
  std::vector<int> ys;
  for (int i = 0; i < 8; ++i) {
    Eigen::VectorXd x(3);
    for (int k = 0; k < 3; ++k) x[k] = gauss(rng);
    xs.push_back(x);
    ys.push_back(i % 2 == 0 ? 1 : -1);
  }
  const Dataset data(xs, ys);
  const Uncertainty unc(SigmaHalf::identity(3), 0.4, 2.0);

  SUBCASE("random fourier features") {
    const FeatureMap map = RffMap::sample(3, 16, 1.0, RffVariant::paired, 11);
    const SolverProblem problem = build_problem(
        data, UncertaintyModel::shared(unc), map, 2.0, 0.01);
    REQUIRE(problem.size() == 8);
    CHECK(problem.lambda == 0.01);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(problem.features[i] == transform(map, data.sample(i)));
      CHECK(problem.labels[i] == data.label(i));
      // shared uncertainty: same Gamma everywhere (it is x-independent)
      CHECK(problem.bounds[i].gamma_feat == problem.bounds[0].gamma_feat);
      CHECK(problem.bounds[i].gamma_feat > 0.0);
      // cached and uncached construction agree
      const FeatureBound direct =
          rff_bound(std::get<RffMap>(map), data.sample(i), unc, 2.0);
      CHECK(problem.bounds[i].gamma_feat == direct.gamma_feat);
    }
  }

  SUBCASE("zero radius short-circuits to zero bounds") {
    const FeatureMap map = RffMap::sample(3, 16, 1.0, RffVariant::offset, 11);
    const Uncertainty zero(SigmaHalf::identity(3), 0.0, 2.0);
    const SolverProblem problem = build_problem(
        data, UncertaintyModel::shared(zero), map, 2.0, 0.01);
    for (const auto& bound : problem.bounds) CHECK(bound.gamma_feat == 0.0);
  }

  SUBCASE("identity map uses the input-space uncertainty directly") {
    const FeatureMap map = IdentityMap{3};
    const SolverProblem problem = build_problem(
        data, UncertaintyModel::shared(unc), map, 2.0, 0.01);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(problem.features[i] == data.sample(i));
      CHECK(problem.bounds[i].gamma_feat == unc.gamma);
      CHECK(problem.bounds[i].feature_norm.p == unc.p);
    }
    // the robust hinge then equals the input-space robust loss
    Eigen::VectorXd w(3);
    w << 0.3, -1.0, 0.7;
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(robust_hinge(w, 0.1, problem.features[i], problem.labels[i],
                         problem.bounds[i]) ==
            doctest::Approx(linear_robust_loss(w, 0.1, data.sample(i),
                                               data.label(i), unc))
                .epsilon(1e-14));
    }
  }

  SUBCASE("per-sample uncertainties are respected") {
    std::vector<Uncertainty> per;
    for (int i = 0; i < 8; ++i) {
      per.emplace_back(SigmaHalf::identity(3), i < 4 ? 0.0 : 0.5, 2.0);
    }
    const FeatureMap map = RffMap::sample(3, 16, 1.0, RffVariant::paired, 11);
    const SolverProblem problem = build_problem(
        data, UncertaintyModel::per_sample(per), map, 2.0, 0.01);
    for (int i = 0; i < 4; ++i) CHECK(problem.bounds[i].gamma_feat == 0.0);
    for (int i = 4; i < 8; ++i) CHECK(problem.bounds[i].gamma_feat > 0.0);
  }

  SUBCASE("inconsistent inputs are rejected") {
    const FeatureMap map = RffMap::sample(3, 16, 1.0, RffVariant::paired, 11);
    CHECK_THROWS_AS(
        build_problem(data, UncertaintyModel::shared(unc), map, 2.0, 0.0),
        std::invalid_argument);
    std::vector<Uncertainty> short_list(3, unc);
    CHECK_THROWS_AS(build_problem(data, UncertaintyModel::per_sample(short_list),
                                  map, 2.0, 0.01),
                    std::invalid_argument);
    const FeatureMap wrong_dim = RffMap::sample(4, 16, 1.0, RffVariant::paired, 11);
    CHECK_THROWS_AS(
        build_problem(data, UncertaintyModel::shared(unc), wrong_dim, 2.0, 0.01),
        std::invalid_argument);
  }
}

TEST_CASE("prediction takes the sign of the decision score") {
  RobustClassifier c;
  c.map = IdentityMap{2};
  c.zeta = Eigen::VectorXd(2);
  c.zeta << 1.0, 0.0;
  c.bias = -0.5;
  Eigen::VectorXd x(2);
  x << 2.0, 7.0;
  CHECK(decision_score(c, x) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(predict(c, x) == 1);
  x << 0.25, 0.0;
  CHECK(predict(c, x) == -1);
  x << 0.5, 0.0;  // exact zero score classifies as +1
  CHECK(decision_score(c, x) == 0.0);
  CHECK(predict(c, x) == 1);
}
