#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rfsvm/objective.hpp"
#include "rfsvm/rff.hpp"
#include "rfsvm/rng.hpp"
#include "rfsvm/solver.hpp"

namespace {

// Two separated Gaussian blobs.
rfsvm::Dataset synthetic_data(std::size_t L, Eigen::Index n, std::uint64_t seed) {
  auto rng = rfsvm::make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> xs;
  std::vector<int> ys;
  for (std::size_t i = 0; i < L; ++i) {
    const int y = i % 2 == 0 ? 1 : -1;
    Eigen::VectorXd x(n);
    for (Eigen::Index k = 0; k < n; ++k) x[k] = gauss(rng) + 2.0 * y;
    xs.push_back(std::move(x));
    ys.push_back(y);
  }
  return rfsvm::Dataset(std::move(xs), std::move(ys));
}

void SolverEpoch(benchmark::State& state) {
  const std::size_t L = static_cast<std::size_t>(state.range(0));
  const Eigen::Index n = 10;
  const auto data = synthetic_data(L, n, 11);
  const rfsvm::FeatureMap map =
      rfsvm::RffMap::sample(n, 64, 2.0, rfsvm::RffVariant::paired, 12);
  const rfsvm::Uncertainty unc(rfsvm::SigmaHalf::identity(n), 0.3, 2.0);
  const auto problem = rfsvm::build_problem(
      data, rfsvm::UncertaintyModel::shared(unc), map, 2.0, 1e-3);

  rfsvm::SolverConfig config;
  config.epochs = 1;
  config.lambda = 1e-3;
  config.seed = 13;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfsvm::train(problem, config, map));
  }
}
BENCHMARK(SolverEpoch)->Arg(100)->Arg(1000);

void BuildProblem(benchmark::State& state) {
  const std::size_t L = static_cast<std::size_t>(state.range(0));
  const Eigen::Index n = 10;
  const auto data = synthetic_data(L, n, 11);
  const rfsvm::FeatureMap map =
      rfsvm::RffMap::sample(n, 64, 2.0, rfsvm::RffVariant::paired, 12);
  const rfsvm::Uncertainty unc(rfsvm::SigmaHalf::identity(n), 0.3, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfsvm::build_problem(
        data, rfsvm::UncertaintyModel::shared(unc), map, 2.0, 1e-3));
  }
}
BENCHMARK(BuildProblem)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
