#include <map>
#include <string>

#include <benchmark/benchmark.h>

#include "equitor/io.hpp"

using namespace equitor;

namespace {

const Problem& problem(const char* name) {
  static std::map<std::string, Problem> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, load_problem(std::string(EQUITOR_FIXTURE_DIR) + "/" + name + ".json")).first;
  return it->second;
}

void BM_BarResolution(benchmark::State& state) {
  GroupPtr g = problem("q8_dim3").group;
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bar_resolution(g, len));
}
BENCHMARK(BM_BarResolution)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GreedyResolution(benchmark::State& state) {
  GroupPtr g = problem(state.range(0) == 0 ? "q8_dim3" : "d8_dim5").group;
  for (auto _ : state) benchmark::DoNotOptimize(free_resolution(g, 4));
}
BENCHMARK(BM_GreedyResolution)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_IntegralCohomologyQ8(benchmark::State& state) {
  const Problem& p = problem("q8_dim3");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    CochainComplex cx(p.resolution, GLattice::trivial(p.group, 1), Coefficients::Integral);
    benchmark::DoNotOptimize(cx.cohomology(n).group());
  }
}
BENCHMARK(BM_IntegralCohomologyQ8)->Arg(2)->Arg(4);

void BM_BarCohomologyQ8(benchmark::State& state) {
  const Problem& p = problem("q8_dim3");
  ResolutionPtr bar = bar_resolution(p.group, 3);
  for (auto _ : state) {
    CochainComplex cx(bar, GLattice::trivial(p.group, 1), Coefficients::Integral);
    benchmark::DoNotOptimize(cx.cohomology(2).group());
  }
}
BENCHMARK(BM_BarCohomologyQ8)->Unit(benchmark::kMillisecond);

void BM_PicCohomologyD4(benchmark::State& state) {
  const Problem& p = problem("d4_dim5");
  AffineTorusAction act = validate_action(p.group, p.assignment, p.fan, p.resolution);
  ShortExactSeq seq = divisor_sequence(act);
  for (auto _ : state) {
    CochainComplex cx(act.resolution, seq.C(), Coefficients::Integral);
    benchmark::DoNotOptimize(cx.cohomology(1).group());
  }
}
BENCHMARK(BM_PicCohomologyD4)->Unit(benchmark::kMillisecond);

}  // namespace
