// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS to vary threads.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nullevo/kernels.hpp"

using namespace nullevo;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<double> v(n);
  for (auto& x : v) x = U(rng);
  return v;
}

template <bool Parallel>
void stencil(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto in = noise(n, 1);
  const auto& plan = kernels::cached_plan(n, 3, DiffScheme::wide);
  std::vector<double> out(n);
  for (auto _ : st) {
    if constexpr (Parallel) kernels::omp::apply_stencil(plan, in, 1, out, 1.0);
    else kernels::serial::apply_stencil(plan, in, 1, out, 1.0);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

template <bool Parallel>
void resample(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto values = noise(n, 2);
  std::vector<double> at(n);
  for (std::size_t i = 0; i < n; ++i) at[i] = (static_cast<double>(i) + 0.37) * static_cast<double>(n - 1) / static_cast<double>(n);
  std::vector<double> out(n);
  for (auto _ : st) {
    if constexpr (Parallel) kernels::omp::lagrange_resample(values, at, 8, out);
    else kernels::serial::lagrange_resample(values, at, 8, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n));
}

template <bool Parallel>
void nesting(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto cx = noise(n, 3), cy = noise(n, 4), r = noise(n, 5);
  for (auto _ : st) {
    const auto res = Parallel ? kernels::omp::min_nesting_margin(cx, cy, r) : kernels::serial::min_nesting_margin(cx, cy, r);
    benchmark::DoNotOptimize(res.min_margin);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * (n - 1) / 2));
}

}  // namespace

BENCHMARK(stencil<false>)->Name("apply_stencil/serial")->Arg(4096)->Arg(65536)->Arg(1 << 20);
BENCHMARK(stencil<true>)->Name("apply_stencil/omp")->Arg(4096)->Arg(65536)->Arg(1 << 20);
BENCHMARK(resample<false>)->Name("lagrange_resample/serial")->Arg(4096)->Arg(65536)->Arg(1 << 20);
BENCHMARK(resample<true>)->Name("lagrange_resample/omp")->Arg(4096)->Arg(65536)->Arg(1 << 20);
BENCHMARK(nesting<false>)->Name("min_nesting_margin/serial")->Arg(64)->Arg(256)->Arg(2048);
BENCHMARK(nesting<true>)->Name("min_nesting_margin/omp")->Arg(64)->Arg(256)->Arg(2048);

BENCHMARK_MAIN();
