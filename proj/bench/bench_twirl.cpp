#include <benchmark/benchmark.h>

#include "qinv/haar.hpp"
#include "qinv/state_io.hpp"

namespace {

void run(benchmark::State& st, bool parallel) {
    const int n = static_cast<int>(st.range(0));
    const qinv::AlgebraElement psi = qinv::random_state(n, 42);
    std::vector<int> bits(static_cast<std::size_t>(n), 1);
    const qinv::InvariantIndex idx(bits);
    const std::size_t samples = 20000;
    for (auto _ : st) {
        const auto est = parallel ? qinv::twirl_estimate(psi, idx, samples, 7)
                                  : qinv::twirl_estimate_serial(psi, idx, samples, 7);
        benchmark::DoNotOptimize(est.mean);
    }
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * samples));
}

void BM_TwirlSerial(benchmark::State& st) { run(st, false); }
void BM_TwirlParallel(benchmark::State& st) { run(st, true); }

}  // namespace

BENCHMARK(BM_TwirlSerial)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwirlParallel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
