#include <benchmark/benchmark.h>

#include <crowdalloc/bound.hpp>
#include <crowdalloc/index_table.hpp>
#include <crowdalloc/oracle.hpp>
#include <crowdalloc/simulator.hpp>

#include <cmath>

using namespace crowdalloc;

namespace {

Instance desk(int k) { return Instance::homogeneous(k, static_cast<int>(std::ceil(1.2 * k))); }

void BM_SolveSingleTask(benchmark::State& state) {
  const auto params = single_task_params(desk(static_cast<int>(state.range(0))), 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_single_task(params, 0.047).start_value());
}
BENCHMARK(BM_SolveSingleTask)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_IndexTableBuild(benchmark::State& state) {
  const auto params = single_task_params(desk(static_cast<int>(state.range(0))), 0);
  for (auto _ : state) benchmark::DoNotOptimize(IndexTable::build(params).max_knots());
}
BENCHMARK(BM_IndexTableBuild)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_IndexLambdaStarBisection(benchmark::State& state) {
  const auto params = single_task_params(desk(100), 0);
  for (auto _ : state) benchmark::DoNotOptimize(index_lambda_star({1, 0, 1, 60}, params));
}
BENCHMARK(BM_IndexLambdaStarBisection)->Unit(benchmark::kMillisecond);

void BM_UpperBound(benchmark::State& state) {
  const Instance inst = desk(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(upper_bound(inst).bound_value);
}
BENCHMARK(BM_UpperBound)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Episode(benchmark::State& state) {
  const Instance inst = desk(static_cast<int>(state.range(1)));
  const auto policy = make_policy(static_cast<PolicyKind>(state.range(0)), inst);
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng = replication_rng(1, i++);
    benchmark::DoNotOptimize(run_episode(inst, *policy, LabelSource::synthetic(), rng).terminal_reward);
  }
  state.SetLabel(std::string(to_string(policy->kind())));
}
BENCHMARK(BM_Episode)
    ->ArgsProduct({{static_cast<int>(PolicyKind::index), static_cast<int>(PolicyKind::okg),
                    static_cast<int>(PolicyKind::thompson), static_cast<int>(PolicyKind::round_robin)},
                   {10, 100}})
    ->Unit(benchmark::kMicrosecond);

void BM_ExactOptimal(benchmark::State& state) {
  const Instance inst = Instance::homogeneous(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exact_optimal_value(inst));
}
BENCHMARK(BM_ExactOptimal)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
