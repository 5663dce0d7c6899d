#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rectpart/hybrid.hpp"
#include "rectpart/instances.hpp"

using namespace rectpart;

namespace {

PrefixSum2D ps_of(const oracle::Mat &m) { return build_prefix_sum(oracle::to_matrix(m)); }

}  // namespace

TEST_CASE("allocate_processors worked examples") {
    CHECK(allocate_processors({60, 40}, 6).counts == std::vector<int>{4, 2});
    CHECK(allocate_processors({50, 30, 20}, 10).counts == std::vector<int>{5, 3, 2});
    CHECK(allocate_processors({25, 25, 25, 25}, 8).counts == std::vector<int>{2, 2, 2, 2});
    // zero-load parts keep the mandatory minimum
    CHECK(allocate_processors({10, 0}, 3).counts == std::vector<int>{2, 1});
    // m == P gives everyone exactly one
    CHECK(allocate_processors({5, 1, 1}, 3).counts == std::vector<int>{1, 1, 1});
    CHECK_THROWS_AS(allocate_processors({1, 1}, 1), InfeasibleError);
}

TEST_CASE("allocation sum within [m-P, m] before leftovers, equals m after") {
    std::mt19937_64 rng(81);
    for (int t = 0; t < 200; ++t) {
        int P = 1 + static_cast<int>(uniform_index(rng, 0, 5));
        int m = P + static_cast<int>(uniform_index(rng, 0, 20));
        std::vector<Load> loads(P);
        for (auto &l : loads) l = uniform_index(rng, 0, 50);
        Allocation a = allocate_processors(loads, m);
        CHECK(a.total() == m);
        for (int c : a.counts) CHECK(c >= 1);
    }
}

TEST_CASE("expected load metrics") {
    Allocation a{{4, 2}};
    Rational eml = expected_max_load({60, 40}, a);
    CHECK(eml == Rational(20, 1));
    CHECK(expected_li({60, 40}, a, 6) == doctest::Approx(0.2));

    Allocation single{{3}};
    CHECK(expected_max_load({9}, single) == Rational(3, 1));
    CHECK(expected_li({9}, single, 3) == doctest::Approx(0.0));
}

TEST_CASE("sweep candidates are the ends of constant ceil((m-P)/P) runs") {
    CHECK(sweep_candidates(12, 2) == std::vector<int>{2, 3, 5, 6});
    CHECK(sweep_candidates(4, 2) == std::vector<int>{2});
    CHECK_THROWS_AS(sweep_candidates(4, 3), InfeasibleError);

    // independent enumeration for a larger m
    for (int m : {100, 512}) {
        auto cands = sweep_candidates(m, 2);
        auto wave = [&](int P) { return (m - P + P - 1) / P; };
        for (std::size_t i = 0; i < cands.size(); ++i) {
            int P = cands[i];
            CHECK(P >= 2);
            CHECK(P <= m / 2);
            if (P + 1 <= m / 2) CHECK(wave(P) != wave(P + 1));  // end of its run
        }
        // every value of the wave function is represented exactly once
        std::vector<int> seen;
        for (int P = 2; P <= m / 2; ++P)
            if (std::find(seen.begin(), seen.end(), wave(P)) == seen.end())
                seen.push_back(wave(P));
        CHECK(seen.size() == cands.size());
    }
}

TEST_CASE("hybrid_run with P=1 degenerates to the phase-2 algorithm") {
    std::mt19937_64 rng(82);
    oracle::Mat m = oracle::random_matrix(rng, 8, 8, 9);
    PrefixSum2D ps = ps_of(m);
    HybridConfig cfg;
    cfg.P = 1;
    cfg.slow.reset();
    HybridResult hr = hybrid_run(ps, 6, cfg);
    CHECK(hr.parts.size() == 1);
    CHECK(validate_partition(hr.partition).ok());
    JaggedPartition direct = jag_m_heur_probe(ps, 6);
    CHECK(hr.lmax == direct.lmax);
}

TEST_CASE("hybrid_run on all-ones is perfectly balanced") {
    oracle::Mat ones(4, std::vector<Load>(4, 1));
    PrefixSum2D ps = ps_of(ones);
    HybridConfig cfg;
    cfg.P = 2;
    HybridResult hr = hybrid_run(ps, 4, cfg);
    CHECK(evaluate_partition(ps, hr.partition).imbalance() == doctest::Approx(0.0));
}

TEST_CASE("fast/slow loop: monotone trace, final never above fast-only") {
    std::mt19937_64 rng(83);
    for (int t = 0; t < 25; ++t) {
        oracle::Mat m = oracle::random_matrix(rng, 6, 6, 9);
        PrefixSum2D ps = ps_of(m);
        HybridConfig with_slow;
        with_slow.P = 2;
        HybridConfig fast_only = with_slow;
        fast_only.slow.reset();
        HybridResult a = hybrid_run(ps, 4, with_slow);
        HybridResult b = hybrid_run(ps, 4, fast_only);
        CHECK(a.lmax <= b.lmax);
        for (std::size_t i = 1; i < a.lmax_trace.size(); ++i)
            CHECK(a.lmax_trace[i] <= a.lmax_trace[i - 1]);
        CHECK(validate_partition(a.partition).ok());
        CHECK(evaluate_partition(ps, a.partition).lmax == a.lmax);
        // per-part lower bound: each part's rects (contiguous in the final
        // partition) have max load at least ceil(part load / Q_r)
        std::size_t offset = 0;
        for (std::size_t i = 0; i < a.parts.size(); ++i) {
            Load part_load = rect_load(ps, a.parts[i]);
            Load part_max = 0;
            for (int k = 0; k < a.alloc.counts[i]; ++k)
                part_max = std::max(part_max, rect_load(ps, a.partition.rects[offset + k]));
            offset += a.alloc.counts[i];
            CHECK(part_max >= ceil_div(part_load, a.alloc.counts[i]));
        }
        CHECK(offset == a.partition.rects.size());
    }
}

TEST_CASE("p_sweep picks the expected-max argmin and runs it") {
    std::mt19937_64 rng(84);
    for (int t = 0; t < 8; ++t) {
        oracle::Mat m = oracle::random_matrix(rng, 10, 10, 9);
        PrefixSum2D ps = ps_of(m);
        HybridConfig cfg;
        cfg.min_P = 2;
        SweepResult sr = p_sweep(ps, 12, cfg);
        REQUIRE(!sr.candidates.empty());
        Rational best = sr.candidates.front().expected_max;
        for (const auto &c : sr.candidates)
            if (c.expected_max < best) best = c.expected_max;
        // the chosen candidate attains the minimum expected max load
        bool found = false;
        for (const auto &c : sr.candidates)
            if (c.P == sr.chosen_P) {
                CHECK(!(c.expected_max > best));
                CHECK(!(best < c.expected_max));
                found = true;
            }
        CHECK(found);
        CHECK(validate_partition(sr.run.partition).ok());
    }
}

TEST_CASE("phase-1 variants produce the requested part count") {
    std::mt19937_64 rng(85);
    oracle::Mat m = oracle::random_matrix(rng, 8, 8, 9);
    PrefixSum2D ps = ps_of(m);
    for (Phase1Algo a :
         {Phase1Algo::kHierRelaxed, Phase1Algo::kJagMHeurStripes, Phase1Algo::kJagMOpt}) {
        HybridConfig cfg;
        cfg.phase1 = a;
        cfg.P = 3;
        cfg.slow.reset();
        HybridResult hr = hybrid_run(ps, 6, cfg);
        CHECK(hr.parts.size() == 3);
        CHECK(validate_partition(hr.partition).ok());
    }
}
