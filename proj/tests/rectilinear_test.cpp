#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rectpart/instances.hpp"
#include "rectpart/rectilinear.hpp"

using namespace rectpart;

TEST_CASE("rect_uniform splits sizes differing by at most one") {
    RectilinearPartition p = rect_uniform(4, 4, 2, 2);
    CHECK(p.row_borders == std::vector<int>{2});
    CHECK(p.col_borders == std::vector<int>{2});
    Partition part = p.expand();
    CHECK(part.m() == 4);
    for (const Rect &r : part.rects) CHECK(r.area() == 4);

    RectilinearPartition q = rect_uniform(5, 5, 2, 1);
    CHECK(q.row_borders == std::vector<int>{3});  // remainder on the leading interval

    CHECK_THROWS_AS(rect_uniform(4, 4, 5, 1), Error);
    CHECK_THROWS_AS(rect_uniform(4, 4, 1, 5), Error);
}

TEST_CASE("rect_uniform on all-ones is perfectly balanced") {
    oracle::Mat ones(4, std::vector<Load>(4, 1));
    PrefixSum2D ps = build_prefix_sum(oracle::to_matrix(ones));
    PartitionStats st = evaluate_partition(ps, rect_uniform(4, 4, 2, 2).expand());
    CHECK(st.imbalance() == doctest::Approx(0.0));
}

TEST_CASE("rect_nicol golden cases") {
    {
        oracle::Mat ones(4, std::vector<Load>(4, 1));
        PrefixSum2D ps = build_prefix_sum(oracle::to_matrix(ones));
        RectilinearPartition p = rect_nicol(ps, 2, 2);
        PartitionStats st = evaluate_partition(ps, p.expand());
        CHECK(st.lmax == 4);
    }
    {
        PrefixSum2D ps = build_prefix_sum(oracle::to_matrix({{1, 5}, {5, 1}}));
        RectilinearPartition p = rect_nicol(ps, 2, 2);
        PartitionStats st = evaluate_partition(ps, p.expand());
        CHECK(st.lmax == 5);  // only grid is four singletons
    }
}

TEST_CASE("rect_nicol: monotone refinement, between optimum and uniform") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 60; ++t) {
        oracle::Mat m = oracle::random_matrix(rng, 6, 6, 9);
        PrefixSum2D ps = build_prefix_sum(oracle::to_matrix(m));
        std::vector<Load> trace;
        RectilinearPartition p = rect_nicol(ps, 2, 2, &trace);
        for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1]);

        Load nicol = evaluate_partition(ps, p.expand()).lmax;
        Load uniform = evaluate_partition(ps, rect_uniform(6, 6, 2, 2).expand()).lmax;
        Load optimal = oracle::best_rectilinear(m, 2, 2);
        CHECK(nicol >= optimal);
        CHECK(nicol <= uniform);
        CHECK(validate_partition(p.expand()).ok());
    }
}

TEST_CASE("rect_nicol handles zero-heavy matrices (empty grid lines reified)") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 40; ++t) {
        oracle::Mat m = oracle::random_matrix(rng, 5, 7, 2);  // many zeros and ties
        PrefixSum2D ps = build_prefix_sum(oracle::to_matrix(m));
        RectilinearPartition p = rect_nicol(ps, 3, 4);
        Partition part = p.expand();
        CHECK(part.m() == 12);
        CHECK(validate_partition(part).ok());
    }
}
