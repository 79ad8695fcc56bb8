#include <benchmark/benchmark.h>

#include "gexplore/explorers.hpp"
#include "gexplore/instances.hpp"
#include "gexplore/learning.hpp"
#include "gexplore/predictions.hpp"
#include "gexplore/robustify.hpp"

namespace {

gx::Instance complete_instance(std::size_t n) { return gx::gen_random(n, 1.0, 1000, 1); }

void BM_Explore(benchmark::State& state, const char* name) {
  gx::Instance inst = complete_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto e = gx::explorer_factory(name)();
    benchmark::DoNotOptimize(gx::run(*e, inst).cost);
  }
}
BENCHMARK_CAPTURE(BM_Explore, nn, "nn")->Arg(50)->Arg(100);
BENCHMARK_CAPTURE(BM_Explore, dfs, "dfs")->Arg(50)->Arg(100);
BENCHMARK_CAPTURE(BM_Explore, hdfs, "hdfs")->Arg(50)->Arg(100);
BENCHMARK_CAPTURE(BM_Explore, blocking, "blocking")->Arg(50)->Arg(100);

void BM_RobustHdfs(benchmark::State& state) {
  gx::Instance inst = complete_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(gx::run_modified(gx::explorer_factory("hdfs"), inst, gx::Rational(1)).cost);
}
BENCHMARK(BM_RobustHdfs)->Arg(50)->Arg(100);

void BM_PerfectTour(benchmark::State& state) {
  gx::Instance inst = complete_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gx::perfect_tour(inst, 0).order.data());
}
BENCHMARK(BM_PerfectTour)->Arg(50)->Arg(100);

void BM_ExactOpt(benchmark::State& state) {
  gx::Instance inst = gx::gen_random(static_cast<std::size_t>(state.range(0)), 0.4, 100, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gx::exact_opt(inst.graph, inst.start));
}
BENCHMARK(BM_ExactOpt)->Arg(8)->Arg(12);

void BM_ErmTree(benchmark::State& state) {
  gx::TrainingSet set = gx::sample(gx::uniform_distribution(20, 1, 100), static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(gx::erm_tree(set).order.data());
}
BENCHMARK(BM_ErmTree)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
