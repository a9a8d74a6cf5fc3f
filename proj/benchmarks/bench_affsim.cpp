#include "affsim/affine.hpp"
#include "affsim/decomposition.hpp"
#include "affsim/enumerate.hpp"
#include "affsim/sampling.hpp"

#include <benchmark/benchmark.h>

using namespace affsim;

static void BM_RrefPrime(benchmark::State& state) {
    PrimeField f5(5);
    Rng rng(1);
    auto m = random_matrix(f5, state.range(0), state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_RrefPrime)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_RrefRational(benchmark::State& state) {
    RationalField q;
    Rng rng(2);
    auto m = random_matrix(q, state.range(0), state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_RrefRational)->Arg(4)->Arg(8);

static void BM_InvariantFactors(benchmark::State& state) {
    PrimeField f5(5);
    Rng rng(3);
    auto m = random_matrix(f5, state.range(0), state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(invariant_factors(m));
}
BENCHMARK(BM_InvariantFactors)->Arg(4)->Arg(6)->Arg(8);

static void BM_FrobeniusBasis(benchmark::State& state) {
    PrimeField f5(5);
    Rng rng(4);
    auto m = random_matrix(f5, state.range(0), state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(frobenius_basis(m));
}
BENCHMARK(BM_FrobeniusBasis)->Arg(4)->Arg(6)->Arg(8);

static void BM_Tau(benchmark::State& state) {
    PrimeField f3(3);
    Rng rng(5);
    auto f = random_affine_map(f3, state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(tau(f));
}
BENCHMARK(BM_Tau)->Arg(4)->Arg(8);

static void BM_DecideSimilar(benchmark::State& state) {
    PrimeField f3(3);
    Rng rng(6);
    auto f = random_affine_map(f3, state.range(0), rng);
    auto g = conjugate(random_affine_isomorphism(f3, state.range(0), rng), f);
    for (auto _ : state) benchmark::DoNotOptimize(decide_similar(f, g));
}
BENCHMARK(BM_DecideSimilar)->Arg(4)->Arg(6);

static void BM_BuildConjugator(benchmark::State& state) {
    PrimeField f3(3);
    Rng rng(7);
    auto f = random_affine_map(f3, state.range(0), rng);
    auto g = conjugate(random_affine_isomorphism(f3, state.range(0), rng), f);
    for (auto _ : state) benchmark::DoNotOptimize(build_conjugator(f, g));
}
BENCHMARK(BM_BuildConjugator)->Arg(3)->Arg(4)->Arg(6);

static void BM_BuildConjugatorRational(benchmark::State& state) {
    RationalField q;
    Rng rng(8);
    auto f = random_affine_map(q, state.range(0), rng);
    auto g = conjugate(random_affine_isomorphism(q, state.range(0), rng), f);
    for (auto _ : state) benchmark::DoNotOptimize(build_conjugator(f, g));
}
BENCHMARK(BM_BuildConjugatorRational)->Arg(3);

static void BM_BruteForceClasses(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_affine_classes(2, 2, false));
}
BENCHMARK(BM_BruteForceClasses);

static void BM_MinimalFlat(benchmark::State& state) {
    PrimeField f2(2);
    Rng rng(9);
    auto f = random_affine_map(f2, 3, rng);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_min_flat(f));
}
BENCHMARK(BM_MinimalFlat);

BENCHMARK_MAIN();
