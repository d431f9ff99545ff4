#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>

#include "heightlab/box_scan.hpp"
#include "heightlab/kernels.hpp"

using namespace heightlab;
using namespace heightlab::kernels;

namespace {

const CompiledForm& fermat_cubic() {
  static const CompiledForm f(DiagonalForm::make(3, 2, {BigInt(1), BigInt(1), BigInt(1), BigInt(1)}).to_form());
  return f;
}

const CompiledForm& conic() {
  static const CompiledForm f(HomogeneousForm::make(3, {{{1, 1, 0}, BigInt(1)}, {{0, 0, 2}, BigInt(-1)}}));
  return f;
}

void BM_count_mod_serial(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::count_primitive_mod_serial(fermat_cubic(), p, 1));
}
void BM_count_mod_parallel(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_primitive_mod(fermat_cubic(), p, 1));
  state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_count_mod_serial)->Arg(17)->Arg(31)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_mod_parallel)->Arg(17)->Arg(31)->Unit(benchmark::kMillisecond);

ScanSpec conic_spec(std::int64_t M, bool sieve) {
  ScanSpec s;
  s.nvars = 3;
  s.bound = M;
  s.form = &conic();
  s.sieve = sieve;
  return s;
}

void BM_box_scan_serial(benchmark::State& state) {
  const ScanSpec s = conic_spec(state.range(0), false);
  for (auto _ : state) benchmark::DoNotOptimize(reference::box_scan_serial(s));
}
void BM_box_scan_parallel(benchmark::State& state) {
  const ScanSpec s = conic_spec(state.range(0), state.range(1) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(box_scan(s));
}
BENCHMARK(BM_box_scan_serial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_box_scan_parallel)->Args({40, 0})->Args({40, 1})->Args({80, 0})->Args({80, 1})->Unit(benchmark::kMillisecond);

void BM_box_scan_diagonal(benchmark::State& state) {
  ScanSpec s;
  s.nvars = 4;
  s.bound = state.range(0);
  s.form = &fermat_cubic();
  s.diagonal = {1, 1, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(box_scan(s));
}
BENCHMARK(BM_box_scan_diagonal)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_torus_mean(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto f = [](const double* t) { return std::log(std::abs(1.0 + std::exp(std::cos(t[0])) + 0.5 * std::sin(t[1]))); };
  for (auto _ : state) benchmark::DoNotOptimize(torus_mean(2, n, f));
}
BENCHMARK(BM_torus_mean)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
