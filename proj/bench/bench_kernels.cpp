// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "charpoly/exact_moments.hpp"
#include "charpoly/montecarlo.hpp"

using namespace charpoly;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_mc_k1(benchmark::State& st) {
    McConfig c;
    c.n_samples = 50000;
    c.seed = {7, 0};
    c.exec = exec_of(st);
    const SpectralPoint sp(0.3, 0.0, 0.3);
    for (auto _ : st) benchmark::DoNotOptimize(mc_k1(8, 1, sp, c).value);
    st.SetItemsProcessed(st.iterations() * c.n_samples);
}

void BM_k2_negative_exact(benchmark::State& st) {
    QuadOptions q;
    q.exec = exec_of(st);
    const SpectralPoint sp(0.2, 0.1, 0.3);
    for (auto _ : st) benchmark::DoNotOptimize(k2_negative_exact({5, 2, sp, q}).value);
}

void BM_k1_negative_exact_n3(benchmark::State& st) {
    QuadOptions q;
    q.exec = exec_of(st);
    const SpectralPoint sp(0.3, 0.0, 0.3);
    for (auto _ : st) benchmark::DoNotOptimize(k1_negative_exact({8, 3, sp, q}).value);
}

void BM_generating_exact(benchmark::State& st) {
    QuadOptions q;
    q.exec = exec_of(st);
    const GeneratingPoint g = GeneratingPoint::local(0.0, 0.1, 0.05, 0.02);
    for (auto _ : st) benchmark::DoNotOptimize(generating_exact(16, g, q).value);
}

}  // namespace

BENCHMARK(BM_mc_k1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_k2_negative_exact)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_k1_negative_exact_n3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generating_exact)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
