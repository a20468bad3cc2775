// Acceptance gate: ten numbered criteria, each printed as one PASS/FAIL line
// with its pinned tolerance. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rfsvm/errors.hpp"
#include "rfsvm/nystrom.hpp"
#include "rfsvm/rff.hpp"
#include "rfsvm/rng.hpp"
#include "rfsvm/solver.hpp"
#include "rfsvm/verify.hpp"

using namespace rfsvm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream out;
  out << std::setprecision(prec) << v;
  return out.str();
}

const std::vector<double> kGammaGrid = {0.0, 0.1, 0.5, 2.0, 10.0};
const std::vector<double> kExponents = {1.0, 2.0, kInf};

// ---------------------------------------------------------------------------
// 1. Certified fourier-feature displacement bounds hold under Monte Carlo.
Outcome criterion_bounds_fourier() {
  const auto start = std::chrono::steady_clock::now();
  Eigen::VectorXd d(2);
  d << 0.8, 1.6;
  const SigmaHalf sh = SigmaHalf::diagonal(d);

  std::uint64_t cells = 0, violations = 0, cell_stream = 0;
  double worst_ratio = 0.0;
  for (int seed_idx = 0; seed_idx < 3; ++seed_idx) {
    for (Eigen::Index D : {8, 64}) {
      const RffMap map =
          RffMap::sample(2, D, 1.1, RffVariant::paired,
                         1000 + 10 * static_cast<std::uint64_t>(seed_idx) + D);
      const FeatureMap fmap = map;
      auto rng = make_rng(split_seed(500 + seed_idx, SeedStream::verify));
      std::normal_distribution<double> gauss(0.0, 1.0);
      Eigen::VectorXd x(2);
      x << gauss(rng), gauss(rng);
      for (double p : kExponents) {
        for (double gamma : kGammaGrid) {
          const Uncertainty unc(sh, gamma, p);
          for (double pbar : kExponents) {
            const FeatureBound bound = rff_bound(map, x, unc, pbar);
            const BoundReport rep = verify_bound_mc(
                fmap, x, unc, bound, 10000,
                split_seed(split_seed(7, SeedStream::trial), cell_stream++));
            ++cells;
            violations += rep.violations;
            worst_ratio = std::max(worst_ratio, rep.max_ratio);
          }
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = violations == 0 && elapsed < 120.0;
  out.detail = "||R dphi||_pbar <= Gamma + 1e-10 over " + std::to_string(cells) +
               " cells x 10^4 draws (pbar,p in {1,2,inf}; gamma in"
               " {0,0.1,0.5,2,10}; D in {8,64}; 3 maps): " +
               std::to_string(violations) + " violations, worst ratio " +
               fmt(worst_ratio) + ", " + fmt(elapsed, 2) + "s (budget 120s)";
  return out;
}

// ---------------------------------------------------------------------------
// 2. Certified landmark-feature displacement bounds hold under Monte Carlo.
Outcome criterion_bounds_landmark() {
  const auto start = std::chrono::steady_clock::now();
  Eigen::VectorXd d(2);
  d << 0.7, 1.2;
  const SigmaHalf sh = SigmaHalf::diagonal(d);

  std::uint64_t cells = 0, violations = 0, cell_stream = 0;
  double worst_ratio = 0.0;
  bool truncation_seen = true;
  std::vector<std::string> ranks;
  for (int m : {5, 50}) {
    for (double rank_tol : {1e-12, 0.25}) {
      auto rng = make_rng(split_seed(600 + m, SeedStream::landmarks));
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::vector<Eigen::VectorXd> z(m, Eigen::VectorXd(2));
      for (auto& v : z) {
        v[0] = gauss(rng);
        v[1] = gauss(rng);
      }
      const NystromMap map = NystromMap::fit(std::move(z), 1.3, rank_tol);
      ranks.push_back(std::to_string(map.output_dim()) + "/" + std::to_string(m));
      if (rank_tol == 0.25 && map.output_dim() >= m) truncation_seen = false;
      const FeatureMap fmap = map;
      Eigen::VectorXd x(2);
      x << gauss(rng), gauss(rng);
      for (double gamma : kGammaGrid) {
        const Uncertainty unc(sh, gamma, 2.0);
        const FeatureBound bound = nystrom_bound(map, x, unc);
        const BoundReport rep = verify_bound_mc(
            fmap, x, unc, bound, 10000,
            split_seed(split_seed(8, SeedStream::trial), cell_stream++));
        ++cells;
        violations += rep.violations;
        worst_ratio = std::max(worst_ratio, rep.max_ratio);
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::string rank_list;
  for (const auto& r : ranks) rank_list += (rank_list.empty() ? "" : ",") + r;
  Outcome out;
  out.pass = violations == 0 && truncation_seen && elapsed < 120.0;
  out.detail = "||L^{1/2} dphi||_2 <= Gamma + 1e-10 over " +
               std::to_string(cells) +
               " cells x 10^4 draws (p=2; gamma grid; m in {5,50}; retained"
               " ranks " + rank_list +
               (truncation_seen ? "; truncation engaged"
                                : "; TRUNCATION NEVER ENGAGED") +
               "): " + std::to_string(violations) + " violations, worst ratio " +
               fmt(worst_ratio) + ", " + fmt(elapsed, 2) + "s (budget 120s)";
  return out;
}

// ---------------------------------------------------------------------------
// 3. Zero radius collapses every bound to exactly zero and the robust loss to
//    the plain hinge.
Outcome criterion_zero_radius() {
  const RffMap rff = RffMap::sample(3, 16, 1.0, RffVariant::paired, 31);
  auto rng = make_rng(32);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> z(7, Eigen::VectorXd(3));
  for (auto& v : z) {
    for (int k = 0; k < 3; ++k) v[k] = gauss(rng);
  }
  const NystromMap nys = NystromMap::fit(std::move(z), 1.0, 1e-12);

  Eigen::VectorXd d(3);
  d << 0.5, 2.0, 1.0;
  double worst_gamma = 0.0;
  Eigen::VectorXd x(3);
  for (int rep = 0; rep < 20; ++rep) {
    for (int k = 0; k < 3; ++k) x[k] = gauss(rng);
    for (double p : kExponents) {
      const Uncertainty zero(SigmaHalf::diagonal(d), 0.0, p);
      for (double pbar : kExponents) {
        worst_gamma = std::max(worst_gamma,
                               std::abs(rff_bound(rff, x, zero, pbar).gamma_feat));
      }
      if (p == 2.0) {
        worst_gamma =
            std::max(worst_gamma, std::abs(nystrom_bound(nys, x, zero).gamma_feat));
      }
    }
  }

  double worst_loss_gap = 0.0;
  const FeatureBound zero_bound(0.0, FeatureRotation::identity(), NormPair(2.0));
  for (int rep = 0; rep < 1000; ++rep) {
    Eigen::VectorXd zeta(4), phi(4);
    for (int k = 0; k < 4; ++k) {
      zeta[k] = 2.0 * gauss(rng);
      phi[k] = gauss(rng);
    }
    const double b = gauss(rng);
    const int y = rep % 2 == 0 ? 1 : -1;
    const double robust = robust_hinge(zeta, b, phi, y, zero_bound);
    const double plain = std::max(0.0, 1.0 - y * (zeta.dot(phi) + b));
    worst_loss_gap = std::max(worst_loss_gap, std::abs(robust - plain));
  }

  Outcome out;
  out.pass = worst_gamma <= 1e-14 && worst_loss_gap <= 1e-14;
  out.detail = "gamma=0 collapse: max |Gamma| = " + fmt(worst_gamma) +
               (worst_gamma == 0.0 ? " (exact zero)" : "") +
               " over both schemes x 20 points; max |robust - hinge| = " +
               fmt(worst_loss_gap) + " over 10^3 draws (tolerance 1e-14)";
  return out;
}

// ---------------------------------------------------------------------------
// 4. Paired features have unit norm; the saturated bound equals 2 exactly.
Outcome criterion_unit_norm_saturation() {
  auto rng = make_rng(41);
  std::normal_distribution<double> gauss(0.0, 2.0);
  double worst_norm_gap = 0.0;
  for (Eigen::Index D : {8, 64, 256}) {
    const RffMap map = RffMap::sample(3, D, 1.4, RffVariant::paired, 40 + D);
    Eigen::VectorXd x(3);
    for (int rep = 0; rep < 50; ++rep) {
      for (int k = 0; k < 3; ++k) x[k] = gauss(rng);
      worst_norm_gap =
          std::max(worst_norm_gap, std::abs(map.transform(x).norm() - 1.0));
    }
  }

  const Uncertainty huge(SigmaHalf::identity(2), 1e9, 2.0);
  Eigen::VectorXd x2(2);
  x2 << 0.3, -0.7;
  int exact = 0, total = 0;
  for (Eigen::Index D = 2; D <= 256; D += 2) {
    const RffMap map = RffMap::sample(2, D, 1.0, RffVariant::paired, 90 + D);
    ++total;
    if (rff_bound(map, x2, huge, 2.0).gamma_feat == 2.0) ++exact;
  }

  Outcome out;
  out.pass = worst_norm_gap <= 1e-12 && exact == total;
  out.detail = "max | ||phi(x)||_2 - 1 | = " + fmt(worst_norm_gap) +
               " over D in {8,64,256} x 50 points (tolerance 1e-12); saturated"
               " Gamma(pbar=2) == 2.0 bitwise for " +
               std::to_string(exact) + "/" + std::to_string(total) +
               " even D in [2,256]";
  return out;
}

// ---------------------------------------------------------------------------
// 5. Kernel approximation improves with width; landmark maps reproduce the
//    kernel at the landmarks.
Outcome criterion_kernel_approx() {
  const double sigma = 1.0;
  auto rng = make_rng(51);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> pts(20, Eigen::VectorXd(2));
  for (auto& p : pts) {
    p[0] = gauss(rng);
    p[1] = gauss(rng);
  }

  std::vector<double> means;
  for (Eigen::Index D : {16, 64, 256}) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const FeatureMap map =
          RffMap::sample(2, D, sigma, RffVariant::paired, 5200 + 20 * D + seed);
      total += kernel_approx_error(map, pts, sigma).mean_abs;
    }
    means.push_back(total / 20.0);
  }
  const bool monotone = means[0] >= means[1] && means[1] >= means[2];

  std::vector<Eigen::VectorXd> z(12, Eigen::VectorXd(2));
  for (auto& v : z) {
    v[0] = gauss(rng);
    v[1] = gauss(rng);
  }
  const NystromMap nys = NystromMap::fit(z, sigma, 1e-12);
  const double recon = kernel_approx_error(FeatureMap(nys), z, sigma).max_abs;

  Outcome out;
  out.pass = monotone && recon <= 1e-8;
  out.detail = "mean |phi.phi - k| over 20 points x 20 maps: D=16: " +
               fmt(means[0]) + " >= D=64: " + fmt(means[1]) + " >= D=256: " +
               fmt(means[2]) + "; landmark kernel reconstruction max err " +
               fmt(recon) + " (tolerance 1e-8)";
  return out;
}

// ---------------------------------------------------------------------------
// 6. The closed-form robust linear loss dominates a million sampled
//    perturbed hinges per exponent and is tight in the smooth case.
Outcome criterion_linear_worst_case() {
  Eigen::VectorXd w(2), x(2), d(2);
  w << 1.5, -2.0;
  x << 0.4, 0.8;
  d << 0.5, 2.0;
  const SigmaHalf sh = SigmaHalf::diagonal(d);
  const int y = -1;
  const double b = 0.25;

  std::uint64_t violations = 0, stream = 0;
  double gap2 = kInf;
  for (double p : kExponents) {
    const Uncertainty unc(sh, 0.6, p);
    const double closed = linear_robust_loss(w, b, x, y, unc);
    double max_sampled = 0.0;
    auto rng = make_rng(split_seed(split_seed(60, SeedStream::verify), stream++));
    for (std::uint64_t t = 0; t < 1000000; ++t) {
      const BallMode mode = t < 500000 ? BallMode::interior : BallMode::surface;
      const Eigen::VectorXd dx = sample_uncertainty(unc, mode, rng);
      const double sampled = std::max(0.0, 1.0 - y * (w.dot(x + dx) + b));
      if (sampled > closed + 1e-10) ++violations;
      max_sampled = std::max(max_sampled, sampled);
    }
    if (p == 2.0) gap2 = closed - max_sampled;
  }

  Outcome out;
  out.pass = violations == 0 && gap2 <= 1e-3 && gap2 >= -1e-10;
  out.detail = "closed form + 1e-10 >= sampled hinge for 3 x 10^6 draws"
               " (p in {1,2,inf}): " +
               std::to_string(violations) + " violations; p=2 gap at empirical"
               " max = " + fmt(gap2) + " (tolerance 1e-3)";
  return out;
}

// ---------------------------------------------------------------------------
// 7. Subgradients agree with central finite differences on smooth points.
Outcome criterion_gradients() {
  const double h = 1e-6;
  auto rng = make_rng(71);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd angles(3);
  angles << 0.6, -1.4, 2.1;
  double worst = 0.0;
  bool enough = true;
  for (double pbar : kExponents) {
    const FeatureBound bound(0.8, FeatureRotation::blocks(angles), NormPair(pbar));
    int accepted = 0, attempts = 0;
    while (accepted < 100 && attempts < 500) {
      ++attempts;
      Eigen::VectorXd zeta(6), phi(6);
      for (int k = 0; k < 6; ++k) {
        zeta[k] = gauss(rng);
        phi[k] = 0.5 * gauss(rng);
      }
      try {
        worst = std::max(worst, grad_check(zeta, gauss(rng), phi,
                                           attempts % 2 ? 1 : -1, bound, h));
        ++accepted;
      } catch (const KinkError&) {
      }
    }
    enough = enough && accepted == 100;
  }
  Outcome out;
  out.pass = enough && worst <= 1e-4;
  out.detail = "max relative subgradient error vs central differences (h=1e-6)"
               " over 100 smooth points x qbar in {1,2,inf}: " +
               fmt(worst) + " (tolerance 1e-4)" +
               (enough ? "" : " [could not collect 100 smooth points]");
  return out;
}

// ---------------------------------------------------------------------------
// 8. Solver sanity: separable data solved exactly, bitwise determinism, and
//    objective decrease across the configuration grid.
Outcome criterion_solver() {
  auto rng = make_rng(81);
  std::normal_distribution<double> noise(0.0, 0.3);
  std::vector<Eigen::VectorXd> xs;
  std::vector<int> ys;
  for (int i = 0; i < 50; ++i) {
    for (int sign : {1, -1}) {
      Eigen::VectorXd x(2);
      x << 2.0 * sign + noise(rng), noise(rng);
      xs.push_back(x);
      ys.push_back(sign);
    }
  }
  const Dataset data(xs, ys);

  auto problem_for = [&](double gamma) {
    const Uncertainty unc(SigmaHalf::identity(2), gamma, 2.0);
    return build_problem(data, UncertaintyModel::shared(unc), IdentityMap{2}, 2.0,
                         0.01);
  };

  SolverConfig config;
  config.method = SolveMethod::proximal;
  config.epochs = 50;
  config.step = {StepKind::inverse_scaled, 1.0};
  config.lambda = 0.01;
  config.seed = 123;

  const SolverProblem separable = problem_for(0.0);
  const RobustClassifier model_a = train(separable, config, IdentityMap{2}).first;
  const RobustClassifier model_b = train(separable, config, IdentityMap{2}).first;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (predict(model_a, data.sample(i)) == data.label(i)) ++correct;
  }
  const bool solved = correct == data.size();
  const bool bitwise = model_a.bias == model_b.bias &&
                       model_a.zeta.size() == model_b.zeta.size() &&
                       (model_a.zeta.array() == model_b.zeta.array()).all();

  int decreasing = 0, grid = 0;
  for (SolveMethod method : {SolveMethod::subgradient, SolveMethod::proximal}) {
    for (double gamma : {0.0, 0.2}) {
      for (StepSchedule step : {StepSchedule{StepKind::inverse_scaled, 0.5},
                                StepSchedule{StepKind::constant, 0.05}}) {
        SolverConfig c;
        c.method = method;
        c.epochs = 30;
        c.step = step;
        c.lambda = 0.01;
        c.seed = 9;
        c.trace_every = static_cast<int>(data.size());
        const SolverProblem problem = problem_for(gamma);
        const TrainingTrace trace = train(problem, c, IdentityMap{2}).second;
        ++grid;
        if (trace.objective.back() < trace.objective.front()) ++decreasing;
      }
    }
  }

  Outcome out;
  out.pass = solved && bitwise && decreasing == grid;
  out.detail = "separable 100x2 accuracy " + std::to_string(correct) +
               "/100 within 50 proximal epochs; bitwise determinism " +
               std::string(bitwise ? "holds" : "BROKEN") +
               "; objective decreased on " + std::to_string(decreasing) + "/" +
               std::to_string(grid) + " grid configurations";
  return out;
}

// ---------------------------------------------------------------------------
// 9. The bandwidth floor makes coordinate-clipped frequencies phase-safe.
Outcome criterion_sigma_floor() {
  Eigen::VectorXd d(3);
  d << 0.6, 1.1, 0.9;
  const SigmaHalf sh = SigmaHalf::diagonal(d);
  const double gamma = 0.35, theta_max = 0.8;
  const double sigma = rff_sigma_min(gamma, sh, theta_max);
  const Uncertainty unc(sh, gamma, 2.0);

  auto rng = make_rng(split_seed(91, SeedStream::verify));
  std::normal_distribution<double> freq(0.0, 1.0 / sigma);
  std::uint64_t conditioned = 0, counterexamples = 0;
  for (std::uint64_t t = 0; t < 100000; ++t) {
    Eigen::VectorXd omega(3);
    bool inside = true;
    for (int k = 0; k < 3; ++k) {
      omega[k] = freq(rng);
      inside = inside && std::abs(omega[k]) <= 3.0 / sigma;
    }
    const BallMode mode = t % 2 == 0 ? BallMode::interior : BallMode::surface;
    const Eigen::VectorXd dx = sample_uncertainty(unc, mode, rng);
    if (!inside) continue;
    ++conditioned;
    if (std::abs(omega.dot(dx)) > theta_max * (1.0 + 1e-12)) ++counterexamples;
  }

  Outcome out;
  out.pass = counterexamples == 0 && conditioned > 90000;
  out.detail = "sigma = sigma_min(gamma=0.35, diag, theta_max=0.8) = " +
               fmt(sigma) + ": " + std::to_string(conditioned) +
               "/10^5 draws had all |omega_k| <= 3/sigma and " +
               std::to_string(counterexamples) +
               " of those exceeded |omega.dx| > theta_max (slack 1+1e-12)";
  return out;
}

// ---------------------------------------------------------------------------
// 10. A ring-versus-center dataset that defeats a linear separator is solved
//     by robust training on paired fourier features.
Outcome criterion_ring() {
  const auto start = std::chrono::steady_clock::now();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto rng = make_rng(101);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Eigen::VectorXd> xs;
  std::vector<int> ys;
  for (int i = 0; i < 100; ++i) {
    // central cloud, label +1
    const double rc = 0.6 * std::sqrt(unif(rng));
    const double ac = two_pi * unif(rng);
    Eigen::VectorXd c(2);
    c << rc * std::cos(ac), rc * std::sin(ac);
    xs.push_back(c);
    ys.push_back(1);
    // surrounding ring, label -1
    const double rr = 2.0 + 0.15 * gauss(rng);
    const double ar = two_pi * unif(rng);
    Eigen::VectorXd r(2);
    r << rr * std::cos(ar), rr * std::sin(ar);
    xs.push_back(r);
    ys.push_back(-1);
  }
  const Dataset data(xs, ys);
  const Uncertainty unc(SigmaHalf::identity(2), 0.05, 2.0);

  auto accuracy_of = [&](const RobustClassifier& c) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (predict(c, data.sample(i)) == data.label(i)) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
  };

  SolverConfig config;
  config.method = SolveMethod::proximal;
  config.epochs = 40;
  config.step = {StepKind::inverse_scaled, 0.5};
  config.lambda = 0.01;
  config.seed = 21;

  // a linear separator cannot enclose the central cloud
  const SolverProblem linear_problem = build_problem(
      data, UncertaintyModel::shared(unc), IdentityMap{2}, 2.0, config.lambda);
  const double linear_acc =
      accuracy_of(train(linear_problem, config, IdentityMap{2}).first);

  FeatureMap map = RffMap::sample(2, 64, 1.0, RffVariant::paired,
                                  split_seed(21, SeedStream::feature_map));
  const SolverProblem problem = build_problem(
      data, UncertaintyModel::shared(unc), map, 2.0, config.lambda);
  const double acc = accuracy_of(train(problem, config, std::move(map)).first);

  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = acc >= 0.95 && linear_acc < 0.9 && elapsed < 10.0;
  out.detail = "ring/center dataset (200 points): fourier D=64, gamma=0.05"
               " training accuracy " + fmt(acc) +
               " (floor 0.95); linear baseline " + fmt(linear_acc) +
               " (must stay < 0.9); " + fmt(elapsed, 2) + "s (budget 10s)";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {"fourier displacement bounds", criterion_bounds_fourier},
      {"landmark displacement bounds", criterion_bounds_landmark},
      {"zero-radius collapse", criterion_zero_radius},
      {"unit norm and saturation", criterion_unit_norm_saturation},
      {"kernel approximation", criterion_kernel_approx},
      {"linear worst case", criterion_linear_worst_case},
      {"subgradient correctness", criterion_gradients},
      {"solver sanity", criterion_solver},
      {"bandwidth floor", criterion_sigma_floor},
      {"nonlinear ring separation", criterion_ring},
  };

  int failures = 0;
  int id = 0;
  for (const Entry& entry : entries) {
    ++id;
    Outcome out;
    try {
      out = entry.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("threw: ") + e.what();
    }
    if (!out.pass) ++failures;
    std::cout << "criterion " << std::setw(2) << id << " ["
              << (out.pass ? "PASS" : "FAIL") << "] " << entry.name << ": "
              << out.detail << std::endl;
  }
  if (failures == 0) {
    std::cout << "acceptance: all 10 criteria passed" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << failures << " criterion(s) FAILED" << std::endl;
  return 1;
}
