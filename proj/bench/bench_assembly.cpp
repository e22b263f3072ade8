#include <benchmark/benchmark.h>

#include "wicklab/fock_operators.hpp"
#include "wicklab/random.hpp"

using namespace wicklab;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_BoseCreation(benchmark::State& state)
{
    auto basis = enumerate_basis(Statistics::Bose, 16, 4);
    Rng rng(1);
    const CVector f = random_vector(rng, 16);
    for (auto _ : state)
        benchmark::DoNotOptimize(field_operator(basis, FieldKind::Creation, f, exec_of(state)));
    state.SetLabel(exec_of(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_FermiGamma(benchmark::State& state)
{
    auto basis = enumerate_basis(Statistics::Fermi, 12, 4);
    Rng rng(2);
    const CMatrix u = random_unitary(rng, 12);
    for (auto _ : state)
        benchmark::DoNotOptimize(second_quantize(basis, u, exec_of(state)));
    state.SetLabel(exec_of(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_BoseGamma(benchmark::State& state)
{
    auto basis = enumerate_basis(Statistics::Bose, 8, 3);
    Rng rng(3);
    const CMatrix u = random_unitary(rng, 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(second_quantize(basis, u, exec_of(state)));
    state.SetLabel(exec_of(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_DiffGamma(benchmark::State& state)
{
    auto basis = enumerate_basis(Statistics::Bose, 16, 4);
    Rng rng(4);
    const CMatrix h = random_hermitian(rng, 16);
    for (auto _ : state)
        benchmark::DoNotOptimize(diff_second_quantize(basis, h, exec_of(state)));
    state.SetLabel(exec_of(state) == Exec::Serial ? "serial" : "parallel");
}

} // namespace

BENCHMARK(BM_BoseCreation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FermiGamma)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoseGamma)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiffGamma)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
