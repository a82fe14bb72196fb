// Serial vs OpenMP timings for the hot kernels. The parallel paths buffer
// per-term results and reduce in a fixed order, so both variants produce
// bit-identical values (asserted in the unit tests); these benchmarks measure
// what that determinism costs or saves.

#include <benchmark/benchmark.h>

#include <numeric>

#include "cranklab/asymptotics.hpp"
#include "cranklab/modular.hpp"
#include "cranklab/partition.hpp"
#include "cranklab/verify.hpp"

using namespace cranklab;

namespace {

void BM_MainTerms_Serial(benchmark::State& state) {
    long n = state.range(0);
    for (auto _ : state) {
        MainTermParts p = main_term_parts(5, n, 256, false);
        benchmark::DoNotOptimize(p.sum1.front().re.to_double());
    }
}
BENCHMARK(BM_MainTerms_Serial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_MainTerms_Parallel(benchmark::State& state) {
    long n = state.range(0);
    for (auto _ : state) {
        MainTermParts p = main_term_parts(5, n, 256, true);
        benchmark::DoNotOptimize(p.sum1.front().re.to_double());
    }
}
BENCHMARK(BM_MainTerms_Parallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Equidistribution_Serial(benchmark::State& state) {
    for (auto _ : state) {
        VerificationReport r = verify_equidistribution(5, state.range(0), 256, false);
        benchmark::DoNotOptimize(r.margins.min);
    }
}
BENCHMARK(BM_Equidistribution_Serial)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Equidistribution_Parallel(benchmark::State& state) {
    for (auto _ : state) {
        VerificationReport r = verify_equidistribution(5, state.range(0), 256, true);
        benchmark::DoNotOptimize(r.margins.min);
    }
}
BENCHMARK(BM_Equidistribution_Parallel)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Subadditivity_Serial(benchmark::State& state) {
    for (auto _ : state) {
        VerificationReport r = verify_log_subadditivity(3, 396, 480, false);
        benchmark::DoNotOptimize(r.margins.min);
    }
}
BENCHMARK(BM_Subadditivity_Serial)->Unit(benchmark::kMillisecond);

void BM_Subadditivity_Parallel(benchmark::State& state) {
    for (auto _ : state) {
        VerificationReport r = verify_log_subadditivity(3, 396, 480, true);
        benchmark::DoNotOptimize(r.margins.min);
    }
}
BENCHMARK(BM_Subadditivity_Parallel)->Unit(benchmark::kMillisecond);

void BM_ResidueTable(benchmark::State& state) {
    long n = state.range(0);
    for (auto _ : state) {
        ResidueTable t = build_residue_table(5, n);
        benchmark::DoNotOptimize(t.rows.back().front().get_ui());
    }
}
BENCHMARK(BM_ResidueTable)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_CrankTable(benchmark::State& state) {
    long n = state.range(0);
    for (auto _ : state) {
        CrankTable t = build_crank_table(n);
        benchmark::DoNotOptimize(t.rows.back().front().get_ui());
    }
}
BENCHMARK(BM_CrankTable)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_PartitionCounts(benchmark::State& state) {
    for (auto _ : state) {
        std::vector<mpz_class> p = partition_counts(5000);
        benchmark::DoNotOptimize(p.back().get_ui());
    }
}
BENCHMARK(BM_PartitionCounts)->Unit(benchmark::kMillisecond);

void BM_DedekindAccelerated(benchmark::State& state) {
    for (auto _ : state) {
        mpq_class acc = 0;
        for (long k = 2; k <= 500; ++k) {
            long h = k / 2 + 1; // mid-range h makes the Euclidean descent deep
            while (std::gcd(h, k) != 1) ++h;
            acc += dedekind_sum(h, k);
        }
        benchmark::DoNotOptimize(acc.get_d());
    }
}
BENCHMARK(BM_DedekindAccelerated)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
