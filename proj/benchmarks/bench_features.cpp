#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rfsvm/nystrom.hpp"
#include "rfsvm/rff.hpp"
#include "rfsvm/rng.hpp"

namespace {

Eigen::VectorXd random_point(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = gauss(rng);
  return x;
}

void RffTransform(benchmark::State& state) {
  const Eigen::Index n = 20;
  const Eigen::Index D = state.range(0);
  const auto map = rfsvm::RffMap::sample(n, D, 1.0, rfsvm::RffVariant::paired, 1);
  auto rng = rfsvm::make_rng(2);
  const Eigen::VectorXd x = random_point(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(map.transform(x));
  }
}
BENCHMARK(RffTransform)->Arg(64)->Arg(256)->Arg(1024);

void RffBound(benchmark::State& state) {
  const Eigen::Index n = 20;
  const Eigen::Index D = state.range(0);
  const auto map = rfsvm::RffMap::sample(n, D, 1.0, rfsvm::RffVariant::paired, 1);
  auto rng = rfsvm::make_rng(2);
  const Eigen::VectorXd x = random_point(n, rng);
  const rfsvm::Uncertainty unc(rfsvm::SigmaHalf::identity(n), 0.5, 2.0);
  const Eigen::VectorXd cached = rfsvm::sigma_omega_norms(map, unc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfsvm::rff_bound(map, x, unc, 2.0, cached));
  }
}
BENCHMARK(RffBound)->Arg(64)->Arg(256)->Arg(1024);

void NystromTransform(benchmark::State& state) {
  const Eigen::Index n = 20;
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  auto rng = rfsvm::make_rng(3);
  std::vector<Eigen::VectorXd> landmarks;
  for (std::size_t i = 0; i < m; ++i) landmarks.push_back(random_point(n, rng));
  const auto map = rfsvm::NystromMap::fit(landmarks, 2.0, 1e-10);
  const Eigen::VectorXd x = random_point(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(map.transform(x));
  }
}
BENCHMARK(NystromTransform)->Arg(16)->Arg(64)->Arg(256);

void NystromBound(benchmark::State& state) {
  const Eigen::Index n = 20;
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  auto rng = rfsvm::make_rng(3);
  std::vector<Eigen::VectorXd> landmarks;
  for (std::size_t i = 0; i < m; ++i) landmarks.push_back(random_point(n, rng));
  const auto map = rfsvm::NystromMap::fit(landmarks, 2.0, 1e-10);
  const Eigen::VectorXd x = random_point(n, rng);
  const rfsvm::Uncertainty unc(rfsvm::SigmaHalf::identity(n), 0.5, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rfsvm::nystrom_bound(map, x, unc));
  }
}
BENCHMARK(NystromBound)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
