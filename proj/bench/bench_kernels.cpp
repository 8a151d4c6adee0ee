// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "hilb2/asymptotics.hpp"
#include "hilb2/hilb.hpp"
#include "hilb2/kernels.hpp"
#include "hilb2/parallel.hpp"

using namespace hilb2;

namespace {

const std::vector<lattice::LinearForm>& scan_forms() {
  static const auto forms = hilb::canonical_forms(4);
  return forms;
}

void BM_DistanceScanSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::distance_scan_serial(scan_forms(), 2));
}

void BM_DistanceScanParallel(benchmark::State& st) {
  parallel::set_threads(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::distance_scan(scan_forms(), 2));
  parallel::set_threads(0);
}

void BM_CountSerial(benchmark::State& st) {
  const double B = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(asymptotics::count_Nst_serial({2, 1, B}));
}

void BM_CountParallel(benchmark::State& st) {
  const double B = static_cast<double>(st.range(0));
  parallel::set_threads(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(asymptotics::count_Nst({2, 1, B}));
  parallel::set_threads(0);
}

}  // namespace

BENCHMARK(BM_DistanceScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceScanParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountSerial)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountParallel)->Args({10, 1})->Args({10, 4})->Args({20, 1})->Args({20, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
