// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <benchmark/benchmark.h>

#include "ratmat/experiment.hpp"
#include "ratmat/interp.hpp"
#include "ratmat/numcore.hpp"

using namespace ratmat;

namespace
{

ComplexMatrix random_matrix(std::mt19937_64 &rng, Eigen::Index n)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix A(n, n);
  for (Eigen::Index i = 0; i < n; i++)
  {
    for (Eigen::Index j = 0; j < n; j++)
    {
      A(i, j) = Complex(u(rng), u(rng));
    }
  }
  return A;
}

void BM_DividedDifferences(benchmark::State &state)
{
  std::vector<Complex> z;
  for (int k = 0; k < state.range(0); k++)
  {
    z.emplace_back(0.1 * k, -0.05 * k);
  }
  const NodeList nodes(z);
  const JetFunction f = jets::exp();
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(divided_differences(f, nodes));
  }
}
BENCHMARK(BM_DividedDifferences)->Arg(8)->Arg(32);

void BM_EigSmall(benchmark::State &state)
{
  std::mt19937_64 rng(1);
  const ComplexMatrix A = random_matrix(rng, state.range(0));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(eig_small(A));
  }
}
BENCHMARK(BM_EigSmall)->Arg(9)->Arg(64);

void BM_LinearizedFit(benchmark::State &state)
{
  const ExperimentConfig cfg;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(derive_poles(cfg));
  }
}
BENCHMARK(BM_LinearizedFit);

void BM_Trial(benchmark::State &state)
{
  ExperimentConfig cfg;
  cfg.n = static_cast<std::size_t>(state.range(0));
  const auto poles = derive_poles(cfg);
  std::size_t trial = 0;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(run_trial(cfg, poles, trial++));
  }
}
BENCHMARK(BM_Trial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
