#include <benchmark/benchmark.h>

#include "qtp/arrival.hpp"
#include "qtp/reduction.hpp"
#include "qtp/scatter_kernel.hpp"

using namespace qtp;

namespace {

void BM_arrival_amplitude(benchmark::State& state) {
    const int nt = static_cast<int>(state.range(0));
    Grid kg{44.0, 56.0, 1601};
    Grid tg{20.0, 60.0, nt};
    const Wavepacket phi = gaussian_wavepacket(50.0, 1.0, 0.0, kg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(arrival_amplitude(phi, 40.0, 0.0, tg));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(nt) *
                            kg.count);
}
BENCHMARK(BM_arrival_amplitude)->Arg(301)->Arg(1201);

void BM_oscillatory_integral(benchmark::State& state) {
    Grid g{-12.0, 12.0, static_cast<int>(state.range(0))};
    Eigen::VectorXcd f(g.count);
    for (int i = 0; i < g.count; ++i) {
        const double k = g.node(i);
        f[i] = std::exp(-0.5 * k * k) * std::polar(1.0, 1.7 * k);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(oscillatory_integral(f, g));
    }
}
BENCHMARK(BM_oscillatory_integral)->Arg(1001)->Arg(4001);

void BM_build_reduction_operator(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Grid kg{3.0, 7.0, n};
    Grid qg{3.0, 7.0, n};
    const DetectorKernel k1 = kernel_pointlike(1.0, 3.0);
    const DetectorKernel k2 = kernel_pointlike(1.0, 6.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_reduction_operator(k1, k2, 1.0, kg, qg, {}));
    }
}
BENCHMARK(BM_build_reduction_operator)->Arg(24)->Arg(48);

void BM_p2_scatter(benchmark::State& state) {
    const int n = 32;
    Grid kg{3.0, 7.0, n};
    Grid qg{3.0, 7.0, n};
    const DetectorKernel k1 = kernel_pointlike(1.0, 3.0);
    const DetectorKernel k2 = kernel_pointlike(1.0, 6.0);
    const double m = 1.0;
    const Wavepacket w = gaussian_wavepacket(5.0, 2.0, 0.0, kg);
    const DensityMatrix rho =
        postselect_state(DensityMatrix::pure(w), [&](double k) {
            return absorption_coefficient(k1, k, m) *
                   absorption_coefficient(k2, k, m);
        });
    const ReductionOperator S = build_reduction_operator(k1, k2, m, kg, qg, {});
    const Eigen::MatrixXd L2 = Eigen::MatrixXd::Ones(n, n);
    Grid tg{0.0, 9.0, static_cast<int>(state.range(0))};
    Grid taug{0.0, 8.0, 64};
    for (auto _ : state) {
        benchmark::DoNotOptimize(p2_scatter(rho, S, L2, 5.0, 2.0, tg, taug));
    }
}
BENCHMARK(BM_p2_scatter)->Arg(32)->Arg(96);

}  // namespace

BENCHMARK_MAIN();
