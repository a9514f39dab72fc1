#include <benchmark/benchmark.h>

#include <random>

#include "unireduce/decompose.hpp"
#include "unireduce/families.hpp"
#include "unireduce/fixedpoint.hpp"
#include "unireduce/group.hpp"

namespace {

using namespace unireduce;

const Tolerance kTol;

void BM_CloseSymmetricGroup(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(families::symmetric_group(n, kTol));
    }
}
BENCHMARK(BM_CloseSymmetricGroup)->Arg(3)->Arg(4)->Arg(5);

void BM_CloseClockShift(benchmark::State& state) {
    const std::size_t d = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(families::clock_shift_group(d, kTol));
    }
}
BENCHMARK(BM_CloseClockShift)->Arg(3)->Arg(4)->Arg(5);

void BM_Defect(benchmark::State& state) {
    const FiniteUnitaryGroup g = families::clock_shift_group(
        static_cast<std::size_t>(state.range(0)), kTol);
    std::mt19937_64 rng(1);
    const UnitVector xi = families::random_unit_vector(rng, g.dim());
    for (auto _ : state) {
        benchmark::DoNotOptimize(defect(g, xi));
    }
}
BENCHMARK(BM_Defect)->Arg(3)->Arg(4)->Arg(5);

void BM_MonomialEigenvector(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const FiniteUnitaryGroup g = families::symmetric_group(n, kTol);
    std::mt19937_64 rng(2);
    const UnitVector uniform(std::vector<cplx>(n, cplx(1.0, 0.0)));
    const UnitVector xi = families::perturbed_vector(rng, uniform, 1e-7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(monomial_eigenvector(g, xi));
    }
}
BENCHMARK(BM_MonomialEigenvector)->Arg(3)->Arg(4);

void BM_TruncateEigenvector(benchmark::State& state) {
    const FiniteUnitaryGroup g = families::padded_group(families::pauli_group(kTol), 1);
    const auto frame = eigenspace_intersection_oracle(g);
    std::mt19937_64 rng(3);
    const UnitVector xi = families::perturbed_vector(rng, frame.front().vec, 1e-7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(truncate_eigenvector(g, xi));
    }
}
BENCHMARK(BM_TruncateEigenvector);

void BM_CommutantBasis(benchmark::State& state) {
    const FiniteUnitaryGroup g = families::clock_shift_group(
        static_cast<std::size_t>(state.range(0)), kTol);
    for (auto _ : state) {
        benchmark::DoNotOptimize(commutant_basis(g));
    }
}
BENCHMARK(BM_CommutantBasis)->Arg(3)->Arg(4)->Arg(6);

void BM_ReduceBlocks(benchmark::State& state) {
    const FiniteUnitaryGroup g = families::padded_group(
        families::clock_shift_group(static_cast<std::size_t>(state.range(0)), kTol), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reduce_blocks(g, 5));
    }
}
BENCHMARK(BM_ReduceBlocks)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
