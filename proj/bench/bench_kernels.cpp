// Serial reference kernels against their OpenMP versions. The second
// argument of every benchmark is the thread count; 1 selects the serial path.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "pps/funcs.hpp"
#include "pps/groupring.hpp"
#include "pps/kernels.hpp"
#include "pps/scheme.hpp"

using namespace pps;

namespace {

void thread_args(benchmark::internal::Benchmark* b, std::initializer_list<int> sizes) {
  const int most = omp_get_max_threads();
  for (int n : sizes) {
    b->Args({n, 1});
    if (most > 1) b->Args({n, most});
  }
}

// x^2 is pseudo-planar, so the scan visits every e.
std::vector<std::uint32_t> pp_values(const FieldCtx& F) {
  return SparsePoly::monomial(F, 2, F.one()).value_table();
}

void BM_DiffScan(benchmark::State& state) {
  const FieldCtx F = FieldCtx::create(static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  const auto values = pp_values(F);
  for (auto _ : state) {
    auto r = threads == 1 ? kernels::diff_scan_serial(F, values) : kernels::diff_scan_parallel(F, values, threads);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_DiffScan)->Apply([](auto* b) { thread_args(b, {8, 10, 12}); })->Unit(benchmark::kMillisecond);

void BM_Z4Dft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  std::mt19937 rng(1);
  std::vector<GaussInt> data(std::size_t{1} << (2 * n));
  for (auto& v : data) v = {static_cast<std::int64_t>(rng() % 7), 0};
  for (auto _ : state) {
    auto copy = data;
    if (threads == 1) kernels::z4_dft_serial(copy, n, false);
    else kernels::z4_dft_parallel(copy, n, false, threads);
    benchmark::DoNotOptimize(copy.data());
  }
}
BENCHMARK(BM_Z4Dft)->Apply([](auto* b) { thread_args(b, {6, 8, 10}); })->Unit(benchmark::kMillisecond);

void BM_BijectiveScalars(benchmark::State& state) {
  const FieldCtx F = FieldCtx::create(static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  std::vector<std::uint32_t> g(F.size());
  for (std::uint32_t y = 0; y < F.size(); ++y) g[y] = F.pow({y ^ 1u}, 5).bits ^ F.pow({y}, 5).bits;
  for (auto _ : state) {
    auto r = threads == 1 ? kernels::bijective_scalars_serial(F, g) : kernels::bijective_scalars_parallel(F, g, threads);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_BijectiveScalars)->Apply([](auto* b) { thread_args(b, {8, 10}); })->Unit(benchmark::kMillisecond);

void BM_VerifySchur(benchmark::State& state) {
  const FieldCtx F = FieldCtx::create(static_cast<int>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  const auto part = build_partition(build_Df(GroupCtx::create(F), SparsePoly::zero(F)));
  for (auto _ : state) {
    auto r = verify_schur(part, threads);
    benchmark::DoNotOptimize(r.ok);
  }
}
BENCHMARK(BM_VerifySchur)->Apply([](auto* b) { thread_args(b, {4, 6}); })->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
