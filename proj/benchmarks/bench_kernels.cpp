#include <benchmark/benchmark.h>

#include <random>

#include "smallinc/green.hpp"
#include "smallinc/scene.hpp"
#include "smallinc/lattice_kernel.hpp"
#include "smallinc/voxels.hpp"

using namespace smallinc;

static void BM_DyadicGreen(benchmark::State& state) {
    const Vec3 x{1.2, -0.4, 0.7}, y{-0.3, 0.9, 0.1};
    for (auto _ : state) benchmark::DoNotOptimize(dyadic_green(x, y, 2.0));
}
BENCHMARK(BM_DyadicGreen);

static void BM_CurlDyadicGreen(benchmark::State& state) {
    const Vec3 x{1.2, -0.4, 0.7}, y{-0.3, 0.9, 0.1};
    for (auto _ : state) benchmark::DoNotOptimize(curl_dyadic_green(x, y, 2.0));
}
BENCHMARK(BM_CurlDyadicGreen);

static void BM_StaticTableMatvec(benchmark::State& state) {
    const int res = static_cast<int>(state.range(0));
    const LatticeCells cells = discretize_shape(ShapeSpec::ball(1.0), res);
    const OffsetTable<double> table = build_static_table(cells);
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    std::vector<double> x(3 * cells.coords.size()), y(x.size());
    for (auto& v : x) v = nd(rng);
    for (auto _ : state) {
        table_matvec(table, cells, x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    state.SetComplexityN(static_cast<int64_t>(cells.coords.size()));
}
BENCHMARK(BM_StaticTableMatvec)->Arg(8)->Arg(16)->Arg(24)->Complexity();

static void BM_DyadicTableMatvec(benchmark::State& state) {
    const int res = static_cast<int>(state.range(0));
    const LatticeCells cells = discretize_shape(ShapeSpec::ball(1.0), res);
    const OffsetTable<Complex> table = build_dyadic_table(cells, 0.1, 2.0);
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    std::vector<Complex> x(3 * cells.coords.size()), y(x.size());
    for (auto& v : x) v = Complex{nd(rng), nd(rng)};
    for (auto _ : state) {
        table_matvec(table, cells, x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    state.SetComplexityN(static_cast<int64_t>(cells.coords.size()));
}
BENCHMARK(BM_DyadicTableMatvec)->Arg(8)->Arg(16)->Arg(24)->Complexity();

static void BM_DyadicTableBuild(benchmark::State& state) {
    const int res = static_cast<int>(state.range(0));
    const LatticeCells cells = discretize_shape(ShapeSpec::ball(1.0), res);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_dyadic_table(cells, 0.1, 2.0));
    }
}
BENCHMARK(BM_DyadicTableBuild)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
