#include <random>

#include <benchmark/benchmark.h>

#include "equitor/exact_linear.hpp"

using namespace equitor;

namespace {

IntMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> entry(-50, 50);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  IntMatrix a = random_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(12)->Arg(24)->Arg(48);

// Divisor-sequence shape: tall and thin, low rank over Z.
void BM_SmithTall(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  IntMatrix a = random_matrix(rows, 5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(SmithForm(a).rank());
}
BENCHMARK(BM_SmithTall)->Arg(42)->Arg(200);

void BM_KernelBasis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  IntMatrix a = random_matrix(n / 2, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(a));
}
BENCHMARK(BM_KernelBasis)->Arg(8)->Arg(24);

}  // namespace
