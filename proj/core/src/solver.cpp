#include "rfsvm/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "rfsvm/errors.hpp"
#include "rfsvm/rng.hpp"

namespace rfsvm {

double step_size(const SolverConfig& config, std::uint64_t t) {
  if (t == 0) throw std::invalid_argument("step_size: updates are counted from 1");
  if (!(config.step.eta0 > 0.0)) {
    throw std::invalid_argument("step_size: eta0 must be positive");
  }
  if (config.step.kind == StepKind::constant) return config.step.eta0;
  return config.step.eta0 /
         (1.0 + config.lambda * config.step.eta0 * static_cast<double>(t));
}

std::pair<RobustClassifier, TrainingTrace> train(const SolverProblem& problem,
                                                 const SolverConfig& config,
                                                 FeatureMap map) {
  if (problem.size() == 0) {
    throw std::invalid_argument("train: empty problem");
  }
  if (problem.labels.size() != problem.size() ||
      problem.bounds.size() != problem.size()) {
    throw std::invalid_argument("train: inconsistent problem arrays");
  }
  if (config.epochs < 1) {
    throw std::invalid_argument("train: epochs must be >= 1");
  }
  if (!(config.step.eta0 > 0.0)) {
    throw std::invalid_argument("train: eta0 must be positive");
  }
  if (!(problem.lambda > 0.0)) {
    throw std::invalid_argument("train: lambda must be positive");
  }
  if (config.lambda != problem.lambda) {
    throw std::invalid_argument("train: config.lambda must equal problem.lambda");
  }
  if (config.trace_every < 0) {
    throw std::invalid_argument("train: trace_every must be >= 0");
  }
  const Eigen::Index dim = problem.features.front().size();
  if (output_dim(map) != dim) {
    throw std::invalid_argument("train: map output does not match feature size");
  }

  const std::size_t L = problem.size();
  const double Ld = static_cast<double>(L);
  const std::uint64_t total =
      static_cast<std::uint64_t>(config.epochs) * static_cast<std::uint64_t>(L);

  Eigen::VectorXd zeta = Eigen::VectorXd::Zero(dim);
  double bias = 0.0;
  Eigen::VectorXd tail_zeta = Eigen::VectorXd::Zero(dim);
  double tail_bias = 0.0;

  auto rng = make_rng(split_seed(config.seed, SeedStream::solver));
  std::uniform_int_distribution<std::size_t> pick(0, L - 1);

  TrainingTrace trace;
  trace.total_updates = total;
  auto record = [&](std::uint64_t t) {
    const double obj = full_objective(problem, zeta, bias);
    if (!std::isfinite(obj)) {
      throw DivergedError("train: objective became non-finite at update " +
                          std::to_string(t));
    }
    trace.update_index.push_back(t);
    trace.objective.push_back(obj);
  };
  if (config.trace_every > 0) record(0);

  for (std::uint64_t t = 1; t <= total; ++t) {
    const std::size_t l = pick(rng);
    const double eta = step_size(config, t);
    auto [gz, gb] = robust_hinge_subgrad(zeta, bias, problem.features[l],
                                         problem.labels[l], problem.bounds[l]);
    if (config.method == SolveMethod::subgradient) {
      zeta -= eta * (problem.lambda * zeta + Ld * gz);
      bias -= eta * Ld * gb;
    } else {
      zeta -= eta * Ld * gz;
      bias -= eta * Ld * gb;
      zeta = prox_ridge(zeta, eta, problem.lambda);
    }
    if (!zeta.allFinite() || !std::isfinite(bias)) {
      throw DivergedError("train: iterate became non-finite at update " +
                          std::to_string(t));
    }
    if (config.tail_average && t > total - L) {
      tail_zeta += zeta;
      tail_bias += bias;
    }
    if (config.trace_every > 0 &&
        (t % static_cast<std::uint64_t>(config.trace_every) == 0 || t == total)) {
      record(t);
    }
  }

  if (config.tail_average) {
    zeta = tail_zeta / Ld;
    bias = tail_bias / Ld;
  }

  return {RobustClassifier{std::move(zeta), bias, std::move(map)}, std::move(trace)};
}

}  // namespace rfsvm
