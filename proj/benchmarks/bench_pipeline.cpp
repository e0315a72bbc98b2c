#include <benchmark/benchmark.h>

#include "equitor/io.hpp"

using namespace equitor;

namespace {

AffineTorusAction action(const std::string& name) {
  Problem p = load_problem(std::string(EQUITOR_FIXTURE_DIR) + "/" + name + ".json");
  return validate_action(p.group, p.assignment, p.fan, p.resolution);
}

void BM_LoadAndValidate(benchmark::State& state) {
  const char* names[] = {"q8_dim3", "d4_dim5"};
  for (auto _ : state) benchmark::DoNotOptimize(action(names[state.range(0)]));
}
BENCHMARK(BM_LoadAndValidate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ObstructionQ8(benchmark::State& state) {
  AffineTorusAction act = action("q8_dim3");
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_class(act));
}
BENCHMARK(BM_ObstructionQ8)->Unit(benchmark::kMillisecond);

void BM_AnalyzeQ8(benchmark::State& state) {
  AffineTorusAction act = action("q8_dim3");
  AnalysisOptions options{SubgroupScope::All, true, false, false};
  for (auto _ : state) benchmark::DoNotOptimize(analyze(act, options));
}
BENCHMARK(BM_AnalyzeQ8)->Unit(benchmark::kMillisecond);

void BM_ObstructionD4(benchmark::State& state) {
  AffineTorusAction act = action("d4_dim5");
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_class(act));
}
BENCHMARK(BM_ObstructionD4)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_ConditionA_D4(benchmark::State& state) {
  AffineTorusAction act = action("d4_dim5");
  for (auto _ : state) benchmark::DoNotOptimize(condition_A(act));
}
BENCHMARK(BM_ConditionA_D4)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_ProjectiveUnirationality(benchmark::State& state) {
  AffineTorusAction act = action(state.range(0) == 0 ? "p1_klein" : "p1xp1_klein2");
  for (auto _ : state) benchmark::DoNotOptimize(pu_test(act));
}
BENCHMARK(BM_ProjectiveUnirationality)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
