// Serial vs OpenMP row-update policy on the fraction-free elimination
// kernels, over deterministic dense inputs. The two policies are
// bit-identical (see the unit tests); this measures where splitting the row
// updates starts paying for its scheduling overhead.
#include <benchmark/benchmark.h>

#include "alcove/linalg.hpp"

namespace {

using namespace alcove;

IntMat dense_int_matrix(std::size_t rows, std::size_t cols) {
    IntMat m(rows, IntVec(cols));
    unsigned long long s = 0x9e3779b97f4a7c15ull;
    for (auto& row : m)
        for (auto& e : row) {
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            e = static_cast<long>((s >> 40) % 19) - 9;
        }
    return m;
}

RatMat dense_rat_matrix(std::size_t rows, std::size_t cols) {
    RatMat m(rows, RatVec(cols));
    unsigned long long s = 0x853c49e6748fea9bull;
    for (auto& row : m)
        for (auto& e : row) {
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            Rat q(static_cast<long>((s >> 40) % 19) - 9, 1 + static_cast<long>((s >> 20) % 5));
            q.canonicalize();
            e = q;
        }
    return m;
}

void bench_echelon(benchmark::State& state, ExecPolicy pol) {
    auto n = static_cast<std::size_t>(state.range(0));
    IntMat m = dense_int_matrix(n, n + n / 2);
    for (auto _ : state) {
        IntEchelon e = bareiss_echelon(m, pol);
        benchmark::DoNotOptimize(e.rank);
    }
}

void bench_nullspace(benchmark::State& state, ExecPolicy pol) {
    auto n = static_cast<std::size_t>(state.range(0));
    RatMat m = dense_rat_matrix(n, n + n / 2);
    for (auto _ : state) {
        RatMat ns = nullspace(m, pol);
        benchmark::DoNotOptimize(ns.size());
    }
}

}  // namespace

BENCHMARK_CAPTURE(bench_echelon, serial, ExecPolicy::serial)->Arg(16)->Arg(32)->Arg(64)->Arg(96);
BENCHMARK_CAPTURE(bench_echelon, parallel, ExecPolicy::parallel)
    ->Arg(16)
    ->Arg(32)
    ->Arg(64)
    ->Arg(96);
BENCHMARK_CAPTURE(bench_nullspace, serial, ExecPolicy::serial)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(bench_nullspace, parallel, ExecPolicy::parallel)->Arg(16)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
