#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rfsvm/objective.hpp"

namespace rfsvm {

// subgradient: forward step on the full regularized sample objective.
// proximal: forward step on the hinge term, then exact ridge shrinkage.
enum class SolveMethod { subgradient, proximal };

enum class StepKind { constant, inverse_scaled };

// constant: eta_t = eta0. inverse_scaled: eta_t = eta0 / (1 + lambda eta0 t).
struct StepSchedule {
  StepKind kind = StepKind::inverse_scaled;
  double eta0 = 1.0;
};

struct SolverConfig {
  SolveMethod method = SolveMethod::proximal;
  int epochs = 10;
  StepSchedule step;
  // Must equal the problem's lambda; duplicated so the step schedule is
  // self-contained.
  double lambda = 1e-3;
  std::uint64_t seed = 0;
  // Record the full objective every trace_every updates; 0 disables tracing.
  int trace_every = 0;
  // Replace the final iterate by the average over the last epoch.
  bool tail_average = false;
};

struct TrainingTrace {
  std::vector<std::uint64_t> update_index;
  std::vector<double> objective;
  std::uint64_t total_updates = 0;
};

// eta_t for update t >= 1.
double step_size(const SolverConfig& config, std::uint64_t t);

// Stochastic (sub)gradient minimization of
//   (lambda / 2) ||zeta||^2 + sum_i robust_hinge_i(zeta, b).
// Samples uniformly with replacement, one epoch = problem.size() updates,
// deterministic for a fixed config.seed. Throws DivergedError if the iterate
// or a traced objective value leaves the finite range.
std::pair<RobustClassifier, TrainingTrace> train(const SolverProblem& problem,
                                                 const SolverConfig& config,
                                                 FeatureMap map);

}  // namespace rfsvm
