#include <benchmark/benchmark.h>

#include "coarsegeom/median_structures.hpp"
#include "coarsegeom/separation.hpp"
#include "coarsegeom/tree_boundary.hpp"

using namespace coarsegeom;

static void BM_DeltaScan(benchmark::State& state) {
    auto s = make_tree_x_path(make_regular_tree(3, 2), static_cast<std::size_t>(state.range(0)));
    const auto& d = s.distance_matrix();
    for (auto _ : state) {
        auto r = estimate_delta_int(d);
        benchmark::DoNotOptimize(r.delta);
    }
    state.SetComplexityN(static_cast<int64_t>(s.num_vertices()));
}
BENCHMARK(BM_DeltaScan)->Arg(4)->Arg(9)->Arg(14)->Complexity();

static void BM_DLBuild(benchmark::State& state) {
    auto s = make_grid(static_cast<std::size_t>(state.range(0)),
                       static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto dls = build_dl_space(s, 1);
        benchmark::DoNotOptimize(dls.delta);
    }
}
BENCHMARK(BM_DLBuild)->Arg(2)->Arg(3)->Arg(4);

static void BM_MedianTable(benchmark::State& state) {
    auto s = make_grid(static_cast<std::size_t>(state.range(0)),
                       static_cast<std::size_t>(state.range(0)));
    auto mu = MedianOracle::exact_cube_median(s);
    const std::size_t n = mu.size();
    for (auto _ : state) {
        std::size_t acc = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) acc ^= mu.mu(a, b, c);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_MedianTable)->Arg(3)->Arg(5);

static void BM_PhiBuild(benchmark::State& state) {
    FamilySpec fa, fb;
    fa.randomise = fb.randomise = true;
    fa.seed = 1;
    fb.seed = 2;
    fa.depth = fb.depth = static_cast<std::uint32_t>(state.range(0));
    auto A = generate_family(fa);
    auto B = generate_family(fb);
    for (auto _ : state) {
        auto bij = build_phi(A, B);
        benchmark::DoNotOptimize(bij.pairings.size());
    }
}
BENCHMARK(BM_PhiBuild)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
