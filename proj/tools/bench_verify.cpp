// Serial reference vs OpenMP kernels on the two batch workloads.

#include "involution/brackets.hpp"
#include "involution/observables.hpp"
#include "involution/operator_identities.hpp"

#include <benchmark/benchmark.h>

using namespace involution;

namespace {

std::vector<Observable> family(std::size_t n)
{
    std::vector<Rational> alphas;
    for (std::size_t i = 0; i < n; ++i) alphas.emplace_back(1L << i);
    return make_family(FamilyKind::H, make_parameters(alphas, Rational(1)));
}

void BM_brackets_serial(benchmark::State& state)
{
    const auto fam = family(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_commuting_family_serial(fam, BracketSpec::poisson(), 100, 42, 1e-10));
}

void BM_brackets_parallel(benchmark::State& state)
{
    const auto fam = family(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_commuting_family(fam, BracketSpec::poisson(), 100, 42, 1e-10));
}

void BM_soN(benchmark::State& state, ops::Execution exec)
{
    for (auto _ : state) benchmark::DoNotOptimize(ops::verify_soN(static_cast<std::size_t>(state.range(0)), exec));
}

}  // namespace

BENCHMARK(BM_brackets_serial)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_brackets_parallel)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_soN, serial, ops::Execution::Serial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_soN, parallel, ops::Execution::Parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
