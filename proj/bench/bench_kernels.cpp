// Serial reference vs OpenMP kernels: dense complex matmul, commutator and
// the monomial seed grid search.

#include <benchmark/benchmark.h>

#include "qms/operators.hpp"
#include "qms/parabola.hpp"

namespace {

void BM_MatmulReference(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto a = qms::random_unitary(n, 1);
  auto b = qms::random_unitary(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qms::matmul_reference(a, b));
  state.SetComplexityN(n);
}

void BM_MatmulParallel(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto a = qms::random_unitary(n, 1);
  auto b = qms::random_unitary(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qms::matmul(a, b));
  state.SetComplexityN(n);
}

void BM_CommutatorReference(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto a = qms::random_hermitian(n, 3);
  auto b = qms::random_hermitian(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(qms::matmul_reference(a, b) - qms::matmul_reference(b, a));
}

void BM_CommutatorParallel(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto a = qms::random_hermitian(n, 3);
  auto b = qms::random_hermitian(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(qms::commutator(a, b));
}

qms::SeedSearchOptions search_opts() {
  qms::SeedSearchOptions o;
  o.levels = 3;
  return o;
}

void BM_SeedSearchReference(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(qms::monomial_seed_search_reference(1, 3, 0.1, {0.0, 0.0}, {0.2, 0.4}, search_opts()));
}

void BM_SeedSearchParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(qms::monomial_seed_search(1, 3, 0.1, {0.0, 0.0}, {0.2, 0.4}, search_opts()));
}

}  // namespace

BENCHMARK(BM_MatmulReference)->RangeMultiplier(2)->Range(32, 256)->Complexity();
BENCHMARK(BM_MatmulParallel)->RangeMultiplier(2)->Range(32, 256)->Complexity();
BENCHMARK(BM_CommutatorReference)->Arg(64)->Arg(128);
BENCHMARK(BM_CommutatorParallel)->Arg(64)->Arg(128);
BENCHMARK(BM_SeedSearchReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeedSearchParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
