// Serial reference versus OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include <vector>

#include <gmpxx.h>

#include "smoothdigits/enumerate.hpp"
#include "smoothdigits/experiments.hpp"
#include "smoothdigits/factor.hpp"

using namespace smoothdigits;

namespace {

const std::vector<mpz_class>& sparse_inputs() {
    static const std::vector<mpz_class> values = [] {
        SparseSequence seq(SparseSpec::fixed(2, 3));
        return take(seq, 2000);
    }();
    return values;
}

void BM_FactorBatchSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(factorize_batch_serial(sparse_inputs()));
}

void BM_FactorBatchParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(factorize_batch(sparse_inputs()));
}

void run_survey(benchmark::State& state, bool parallel) {
    SurveyOptions opts;
    opts.base = 2;
    opts.k = 3;
    opts.terms = static_cast<std::uint64_t>(state.range(0));
    opts.parallel = parallel;
    for (auto _ : state) benchmark::DoNotOptimize(sparse_survey(opts));
}

void BM_SurveySerial(benchmark::State& state) { run_survey(state, false); }
void BM_SurveyParallel(benchmark::State& state) { run_survey(state, true); }

}  // namespace

BENCHMARK(BM_FactorBatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FactorBatchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SurveySerial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SurveyParallel)->Arg(500)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
