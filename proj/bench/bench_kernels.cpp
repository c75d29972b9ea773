#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "hybesov/euler.hpp"
#include "hybesov/kernels.hpp"
#include "hybesov/lp.hpp"

namespace {

using namespace hybesov;

std::vector<double> random_vector(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = u(rng);
    return x;
}

template <class Fn>
void with_backend(benchmark::State& state, kernels::Backend b, Fn&& fn) {
    const kernels::Backend previous = kernels::backend();
    kernels::set_backend(b);
    for (auto _ : state) fn();
    kernels::set_backend(previous);
}

void BM_SumAbsPow(benchmark::State& state, kernels::Backend b) {
    const auto x = random_vector(static_cast<std::size_t>(state.range(0)));
    with_backend(state, b, [&] { benchmark::DoNotOptimize(kernels::sum_abs_pow(x, 3.0)); });
}

void BM_Product(benchmark::State& state, kernels::Backend b) {
    const auto x = random_vector(static_cast<std::size_t>(state.range(0)));
    const auto y = random_vector(x.size());
    std::vector<double> out(x.size());
    with_backend(state, b, [&] {
        kernels::product(x, y, out);
        benchmark::ClobberMemory();
    });
}

void BM_BesovNorm2D(benchmark::State& state, kernels::Backend b) {
    const Grid g(2, static_cast<int>(state.range(0)));
    const GridField f = GridField::from_function(g, [&](double x, double y) {
        return std::cos(g.wavenumber(3) * x) * std::sin(g.wavenumber(5) * y);
    });
    with_backend(state, b, [&] { benchmark::DoNotOptimize(besov_norm(f, 1.0, 4.0)); });
}

void BM_EulerStep(benchmark::State& state, kernels::Backend b) {
    const Grid g(1, static_cast<int>(state.range(0)), two_pi * 4.0);
    const EulerParams params{2.0, 0.5, 0.1};
    const GridField c0 = GridField::from_function(g, [&](double x, double) { return 1e-2 * std::cos(g.wavenumber(8) * x); });
    const EulerState s0 = well_prepared(c0, params);
    with_backend(state, b, [&] { benchmark::DoNotOptimize(step(s0, params, 1e-4)); });
}

}  // namespace

BENCHMARK_CAPTURE(BM_SumAbsPow, serial, kernels::Backend::serial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK_CAPTURE(BM_SumAbsPow, omp, kernels::Backend::omp)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK_CAPTURE(BM_Product, serial, kernels::Backend::serial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK_CAPTURE(BM_Product, omp, kernels::Backend::omp)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK_CAPTURE(BM_BesovNorm2D, serial, kernels::Backend::serial)->Arg(256);
BENCHMARK_CAPTURE(BM_BesovNorm2D, omp, kernels::Backend::omp)->Arg(256);
BENCHMARK_CAPTURE(BM_EulerStep, serial, kernels::Backend::serial)->Arg(4096);
BENCHMARK_CAPTURE(BM_EulerStep, omp, kernels::Backend::omp)->Arg(4096);

int main(int argc, char** argv) {
    kernels::configure_threads_from_env();
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
