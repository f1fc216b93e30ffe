#include <benchmark/benchmark.h>

#include "mest/bootstrap.hpp"
#include "mest/coherence.hpp"
#include "mest/estimator.hpp"
#include "mest/gaussian.hpp"
#include "mest/rng.hpp"

namespace {

using namespace mest;

SampleSet make_lad_data(std::size_t n) {
  DataGenSpec gen;
  gen.law = DataLaw::UniformPair;
  gen.n = n;
  auto engine = make_engine(1);
  return gen.sample(engine);
}

void BM_EmpiricalObjective(benchmark::State& state) {
  const auto spec = CriterionSpec::lad();
  const auto grid = ParameterGrid::linspace(0.0, 1.0, 21);
  const auto data = make_lad_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_objective(spec, grid, data));
  }
}
BENCHMARK(BM_EmpiricalObjective)->Arg(100)->Arg(400)->Arg(1600);

void BM_BootstrapDistribution(benchmark::State& state) {
  const auto spec = CriterionSpec::lad();
  const auto grid = ParameterGrid::linspace(0.0, 1.0, 21);
  const auto run = BootstrapRun::prepare(spec, grid, make_lad_data(400));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bootstrap_distribution(run, static_cast<std::uint64_t>(state.range(0)), 3));
  }
}
BENCHMARK(BM_BootstrapDistribution)->Arg(1000)->Arg(5000);

void BM_GaussianArgmaxSampling(benchmark::State& state) {
  const auto model = analytic_model(CriterionSpec::cube_root(),
                                    ParameterGrid::linspace(0.0, 1.0, 21));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_argmax_distribution(model, static_cast<std::uint64_t>(state.range(0)), 3));
  }
}
BENCHMARK(BM_GaussianArgmaxSampling)->Arg(1000)->Arg(10000);

void BM_CoherenceExhaustive(benchmark::State& state) {
  const Eigen::MatrixXd sigma =
      linear_toeplitz(1.75, 0.1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coherent_pd_check(sigma, 0.1, CoherenceMode::Exhaustive()));
  }
}
BENCHMARK(BM_CoherenceExhaustive)->Arg(8)->Arg(11);

}  // namespace

BENCHMARK_MAIN();
