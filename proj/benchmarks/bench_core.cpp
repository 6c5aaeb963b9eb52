// microbenchmarks for the hot evaluation paths
#include <benchmark/benchmark.h>

#include <vector>

#include "usph/asymp.hpp"
#include "usph/eval.hpp"
#include "usph/specfun.hpp"

namespace {

void BM_JacobiRecurrence(benchmark::State& state) {
    const std::int64_t j = state.range(0);
    const usph::HalfInt alpha = usph::HalfInt::from_twice(5);
    double x = 0.123456;
    for (auto _ : state) {
        benchmark::DoNotOptimize(usph::jacobi_symmetric(j, alpha, x));
        x = -x;
    }
    state.SetItemsProcessed(state.iterations() * j);
}
BENCHMARK(BM_JacobiRecurrence)->Arg(100)->Arg(1000)->Arg(10000);

void BM_EvalYRow(benchmark::State& state) {
    const usph::YRow row(usph::HalfInt::from_twice(3), state.range(0));
    const auto pt = usph::EvalPoint::from_x(0.37);
    std::vector<double> out;
    for (auto _ : state) {
        row.eval(pt, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * (state.range(0) + 1));
}
BENCHMARK(BM_EvalYRow)->Arg(64)->Arg(512);

void BM_BesselSeries(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(usph::detail::bessel_j_series(25.0, 8.0));
}
BENCHMARK(BM_BesselSeries);

void BM_BesselBackward(benchmark::State& state) {
    const double z = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(usph::detail::bessel_j_miller(25.0, z));
}
BENCHMARK(BM_BesselBackward)->Arg(60)->Arg(500);

void BM_BesselRow(benchmark::State& state) {
    for (auto _ : state) {
        auto row = usph::bessel_j_row(0.5, 200, 204.75);
        benchmark::DoNotOptimize(row.data());
    }
}
BENCHMARK(BM_BesselRow);

void BM_GaussLegendre(benchmark::State& state) {
    for (auto _ : state) {
        auto rule = usph::gauss_legendre(256);
        benchmark::DoNotOptimize(rule.nodes.data());
    }
}
BENCHMARK(BM_GaussLegendre);

void BM_ZetaSolve(benchmark::State& state) {
    const usph::IndexPair p{usph::HalfInt::from_twice(81),
                            usph::HalfInt::from_twice(20)};
    double x = 0.30;
    for (auto _ : state) {
        benchmark::DoNotOptimize(usph::zeta_solve(p, x));
        x = x < 0.9 ? x + 1e-4 : 0.30;
    }
}
BENCHMARK(BM_ZetaSolve);

void BM_OdeResidual(benchmark::State& state) {
    const usph::IndexPair p{usph::HalfInt::from_twice(199),
                            usph::HalfInt::from_twice(100)};
    for (auto _ : state)
        benchmark::DoNotOptimize(usph::ode_residual_extrapolated(p, 0.5, 1e-3));
}
BENCHMARK(BM_OdeResidual);

} // namespace

BENCHMARK_MAIN();
