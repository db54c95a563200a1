#include <benchmark/benchmark.h>

#include "qsep/algorithms.hpp"
#include "qsep/classical.hpp"
#include "qsep/rng.hpp"
#include "qsep/spectrum.hpp"

using namespace qsep;

namespace {

TruthTable random_table(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  TruthTable tt(n);
  for (Input a = 0; a < tt.size(); ++a) tt.set(a, rng.next() & 1u);
  return tt;
}

void BM_walsh_spectrum(benchmark::State& state) {
  TruthTable tt = random_table(int(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(walsh_spectrum_scaled(tt));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_walsh_spectrum)->DenseRange(10, 18, 4)->Complexity();

void BM_real_poly_degree(benchmark::State& state) {
  TruthTable tt = random_table(int(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(real_poly_degree(tt));
}
BENCHMARK(BM_real_poly_degree)->DenseRange(10, 18, 4);

void BM_brute_force_D(benchmark::State& state) {
  TruthTable tt = random_table(int(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_D(tt));
}
BENCHMARK(BM_brute_force_D)->DenseRange(6, 12, 2);

void BM_execute_product_pair(benchmark::State& state) {
  int n = int(state.range(0));
  Program prog = compile_algorithm1(n);
  SplitMix64 rng(4);
  for (auto _ : state) {
    Input x = Input(rng.below(Input(1) << n));
    benchmark::DoNotOptimize(execute(prog, x));
  }
}
BENCHMARK(BM_execute_product_pair)->Arg(6)->Arg(10)->Arg(14);

void BM_execute_gamma(benchmark::State& state) {
  int n = int(state.range(0));
  Program prog = compile_gamma(random_gamma_spec(n, 5));
  SplitMix64 rng(6);
  for (auto _ : state) {
    Input x = Input(rng.below(Input(1) << n));
    benchmark::DoNotOptimize(execute(prog, x));
  }
}
BENCHMARK(BM_execute_gamma)->Arg(8)->Arg(12);

void BM_compile_gamma(benchmark::State& state) {
  GammaSpec spec = random_gamma_spec(int(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(compile_gamma(spec));
}
BENCHMARK(BM_compile_gamma)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
