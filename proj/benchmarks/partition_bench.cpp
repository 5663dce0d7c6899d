#include <benchmark/benchmark.h>

#include "rectpart/hierarchical.hpp"
#include "rectpart/instances.hpp"
#include "rectpart/jagged.hpp"
#include "rectpart/oned.hpp"
#include "rectpart/rectilinear.hpp"

using namespace rectpart;

namespace {

PrefixSum2D make_instance(int n, double delta) {
    GenSpec spec;
    spec.kind = GenKind::kUniform;
    spec.n1 = spec.n2 = n;
    spec.delta = delta;
    spec.seed = 1;
    return build_prefix_sum(gen_uniform(spec));
}

void BM_prefix_build(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    GenSpec spec;
    spec.kind = GenKind::kUniform;
    spec.n1 = spec.n2 = n;
    spec.delta = 1.2;
    spec.seed = 1;
    LoadMatrix m = gen_uniform(spec);
    for (auto _ : state) {
        PrefixSum2D ps = build_prefix_sum(m);
        benchmark::DoNotOptimize(ps.total());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(n) * n);
}
BENCHMARK(BM_prefix_build)->Arg(256)->Arg(512)->Arg(1024);

void BM_nicol_plus_1d(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    GenSpec spec;
    spec.kind = GenKind::kUniform;
    spec.n1 = 1;
    spec.n2 = n;
    spec.delta = 2.0;
    spec.seed = 7;
    LoadMatrix mat = gen_uniform(spec);
    std::vector<Load> tasks;
    for (int y = 1; y <= n; ++y) tasks.push_back(mat.at(1, y));
    oned::ArrayWorkload w(tasks);
    for (auto _ : state) {
        auto cuts = oned::nicol_plus(w, m);
        benchmark::DoNotOptimize(cuts.borders.data());
    }
}
BENCHMARK(BM_nicol_plus_1d)->Args({10000, 100})->Args({100000, 1000});

template <class F>
void run_partitioner(benchmark::State &state, F make) {
    const int n = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    PrefixSum2D ps = make_instance(n, 1.2);
    for (auto _ : state) {
        Partition p = make(ps, m);
        benchmark::DoNotOptimize(p.rects.data());
    }
}

void BM_rect_nicol(benchmark::State &state) {
    run_partitioner(state, [](const PrefixSum2D &ps, int m) {
        int s = static_cast<int>(std::sqrt(double(m)));
        return rect_nicol(ps, s, s).expand();
    });
}
BENCHMARK(BM_rect_nicol)->Args({512, 1024})->Args({512, 10000});

void BM_jag_m_heur(benchmark::State &state) {
    run_partitioner(state,
                    [](const PrefixSum2D &ps, int m) { return jag_m_heur(ps, m).expand(); });
}
BENCHMARK(BM_jag_m_heur)->Args({512, 1024})->Args({512, 10000});

void BM_jag_m_heur_probe(benchmark::State &state) {
    run_partitioner(state, [](const PrefixSum2D &ps, int m) {
        return jag_m_heur_probe(ps, m).expand();
    });
}
BENCHMARK(BM_jag_m_heur_probe)->Args({512, 1024})->Args({512, 10000});

void BM_hier_rb(benchmark::State &state) {
    run_partitioner(state, [](const PrefixSum2D &ps, int m) {
        return hier_rb(ps, m, HierVariant::kLoad).expand();
    });
}
BENCHMARK(BM_hier_rb)->Args({512, 1024})->Args({512, 10000});

void BM_hier_relaxed(benchmark::State &state) {
    run_partitioner(state, [](const PrefixSum2D &ps, int m) {
        return hier_relaxed(ps, m, HierVariant::kLoad).expand();
    });
}
BENCHMARK(BM_hier_relaxed)->Args({512, 1024})->Args({512, 10000});

}  // namespace

BENCHMARK_MAIN();
