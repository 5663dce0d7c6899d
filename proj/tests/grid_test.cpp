#include <doctest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "rectpart/grid.hpp"
#include "rectpart/instances.hpp"

using namespace rectpart;

namespace {

PrefixSum2D ps_of(const oracle::Mat &m) { return build_prefix_sum(oracle::to_matrix(m)); }

}  // namespace

TEST_CASE("prefix sum matches hand inclusion-exclusion") {
    PrefixSum2D ps = ps_of({{1, 2}, {3, 4}});
    CHECK(ps.gamma(1, 1) == 1);
    CHECK(ps.gamma(1, 2) == 3);
    CHECK(ps.gamma(2, 1) == 4);
    CHECK(ps.gamma(2, 2) == 10);
    CHECK(ps.gamma(0, 2) == 0);
    CHECK(ps.gamma(2, 0) == 0);

    PrefixSum2D z = ps_of({{0}});
    CHECK(z.gamma(1, 1) == 0);

    PrefixSum2D r = ps_of({{5, 5, 5}});
    CHECK(r.gamma(1, 1) == 5);
    CHECK(r.gamma(1, 2) == 10);
    CHECK(r.gamma(1, 3) == 15);
}

TEST_CASE("prefix sum equals naive double loop on randoms") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        int n1 = 1 + static_cast<int>(uniform_index(rng, 0, 7));
        int n2 = 1 + static_cast<int>(uniform_index(rng, 0, 7));
        oracle::Mat m = oracle::random_matrix(rng, n1, n2, 9);
        PrefixSum2D ps = ps_of(m);
        for (int x = 1; x <= n1; ++x)
            for (int y = 1; y <= n2; ++y)
                CHECK(ps.gamma(x, y) == oracle::naive_rect_sum(m, 1, x, 1, y));
    }
}

TEST_CASE("rect_load: golden values and bounds errors") {
    PrefixSum2D ps = ps_of({{1, 2}, {3, 4}});
    CHECK(rect_load(ps, Rect{1, 2, 1, 2}) == 10);
    CHECK(rect_load(ps, Rect{2, 2, 1, 2}) == 7);
    CHECK(rect_load(ps, Rect{1, 1, 2, 2}) == 2);  // degenerate 1x1 = the cell
    CHECK_THROWS_AS(rect_load(ps, Rect{1, 3, 1, 2}), Error);
    CHECK_THROWS_AS(rect_load(ps, Rect{2, 1, 1, 2}), Error);
}

TEST_CASE("rect_load additivity over splits") {
    std::mt19937_64 rng(12);
    oracle::Mat m = oracle::random_matrix(rng, 6, 5, 20);
    PrefixSum2D ps = ps_of(m);
    for (int t = 0; t < 100; ++t) {
        int x1 = 1 + static_cast<int>(uniform_index(rng, 0, 5));
        int x2 = x1 + static_cast<int>(uniform_index(rng, 0, 6 - x1));
        int y1 = 1 + static_cast<int>(uniform_index(rng, 0, 4));
        int y2 = y1 + static_cast<int>(uniform_index(rng, 0, 5 - y1));
        Rect r{x1, x2, y1, y2};
        if (x1 < x2) {
            int c = x1 + static_cast<int>(uniform_index(rng, 0, x2 - x1 - 1));
            CHECK(rect_load(ps, r) == rect_load(ps, Rect{x1, c, y1, y2}) +
                                          rect_load(ps, Rect{c + 1, x2, y1, y2}));
        }
        CHECK(rect_load(ps, r) == oracle::naive_rect_sum(m, x1, x2, y1, y2));
    }
}

TEST_CASE("evaluate_partition golden examples") {
    {
        PrefixSum2D ps = ps_of({{1, 1}, {1, 1}});
        Partition p{2, 2, {{1, 1, 1, 1}, {1, 1, 2, 2}, {2, 2, 1, 1}, {2, 2, 2, 2}}};
        PartitionStats st = evaluate_partition(ps, p);
        CHECK(st.lmax == 1);
        CHECK(st.lavg() == doctest::Approx(1.0));
        CHECK(st.imbalance() == doctest::Approx(0.0));
    }
    {
        PrefixSum2D ps = ps_of({{1, 2}, {3, 4}});
        Partition p{2, 2, {{1, 1, 1, 2}, {2, 2, 1, 2}}};
        PartitionStats st = evaluate_partition(ps, p);
        CHECK(st.lmax == 7);
        CHECK(st.lavg() == doctest::Approx(5.0));
        CHECK(st.imbalance() == doctest::Approx(0.4));
    }
    {
        PrefixSum2D ps = ps_of({{1, 5, 1, 1}});
        Partition p{1, 4, {{1, 1, 1, 2}, {1, 1, 3, 4}}};
        PartitionStats st = evaluate_partition(ps, p);
        CHECK(st.lmax == 6);
        CHECK(st.imbalance() == doctest::Approx(0.5));
    }
}

TEST_CASE("evaluate_partition rejects invalid partitions") {
    PrefixSum2D ps = ps_of({{1, 2}, {3, 4}});
    Partition p{2, 2, {{1, 1, 1, 1}}};
    CHECK_THROWS_AS(evaluate_partition(ps, p), Error);
}

TEST_CASE("validate_partition reports each violation kind") {
    Partition dup{2, 2, {{1, 1, 1, 2}, {1, 1, 1, 2}, {2, 2, 1, 2}}};
    auto rep = validate_partition(dup);
    REQUIRE(!rep.ok());
    bool has_overlap = false;
    for (const auto &v : rep.violations)
        if (v.kind == Violation::Kind::Overlap) has_overlap = true;
    CHECK(has_overlap);

    Partition under{2, 2, {{1, 1, 1, 1}}};
    rep = validate_partition(under);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].kind == Violation::Kind::Coverage);
    CHECK(rep.violations[0].message() == "coverage: area 1 != 4");

    Partition oob{2, 2, {{1, 3, 1, 2}, {2, 2, 1, 2}}};
    rep = validate_partition(oob);
    bool has_oob = false;
    for (const auto &v : rep.violations)
        if (v.kind == Violation::Kind::OutOfBounds) has_oob = true;
    CHECK(has_oob);
}

TEST_CASE("validate_partition agrees with per-cell ownership on randoms") {
    std::mt19937_64 rng(13);
    int disagreements = 0;
    for (int t = 0; t < 400; ++t) {
        int n1 = 1 + static_cast<int>(uniform_index(rng, 0, 7));
        int n2 = 1 + static_cast<int>(uniform_index(rng, 0, 7));
        int m = 1 + static_cast<int>(uniform_index(rng, 0, 4));
        Partition p{n1, n2, {}};
        for (int i = 0; i < m; ++i) {
            int x1 = 1 + static_cast<int>(uniform_index(rng, 0, n1 - 1));
            int x2 = x1 + static_cast<int>(uniform_index(rng, 0, n1 - x1));
            int y1 = 1 + static_cast<int>(uniform_index(rng, 0, n2 - 1));
            int y2 = y1 + static_cast<int>(uniform_index(rng, 0, n2 - y1));
            p.rects.push_back({x1, x2, y1, y2});
        }
        if (validate_partition(p).ok() != oracle::naive_valid(p)) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("lower_bounds") {
    PrefixSum2D ps = ps_of({{1, 2}, {3, 4}});
    LowerBounds lb = lower_bounds(ps, 2);
    CHECK(lb.average == Rational(5, 1));
    CHECK(lb.max_cell == 4);
    CHECK(lb.combined() == 5);

    PrefixSum2D ones = ps_of(oracle::Mat(4, std::vector<Load>(4, 1)));
    lb = lower_bounds(ones, 16);
    CHECK(lb.average == Rational(1, 1));
    CHECK(lb.max_cell == 1);

    PrefixSum2D spiky = ps_of({{9, 0}, {0, 0}});
    lb = lower_bounds(spiky, 4);
    CHECK(lb.average == Rational(9, 4));
    CHECK(lb.average.value() == doctest::Approx(2.25));
    CHECK(lb.max_cell == 9);
    CHECK(lb.combined() == 9);

    CHECK_THROWS_AS(lower_bounds(ps, 0), Error);
}

TEST_CASE("LoadMatrix rejects accumulator overflow naming the cell") {
    Load big = std::numeric_limits<Load>::max() - 1;
    try {
        LoadMatrix m(1, 2, {big, big});
        FAIL("expected overflow rejection");
    } catch (const Error &e) {
        CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
    }
}

TEST_CASE("matrix stats and delta") {
    PrefixSum2D ps = ps_of({{2, 8}, {4, 6}});
    MatrixStats st = matrix_stats(ps);
    CHECK(st.total == 20);
    CHECK(st.max_cell == 8);
    CHECK(st.min_cell == 2);
    REQUIRE(st.delta.has_value());
    CHECK(*st.delta == Rational(4, 1));

    PrefixSum2D withzero = ps_of({{0, 8}});
    CHECK(!matrix_stats(withzero).delta.has_value());
}

TEST_CASE("evaluate_partition lmax equals naive summation on 1000 random valid partitions") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 1000; ++t) {
        int n1 = 1 + static_cast<int>(uniform_index(rng, 0, 15));
        int n2 = 1 + static_cast<int>(uniform_index(rng, 0, 15));
        oracle::Mat m = oracle::random_matrix(rng, n1, n2, 9);
        PrefixSum2D ps = ps_of(m);
        // random valid partition by recursive random guillotine splits
        Partition p{n1, n2, {}};
        std::function<void(Rect)> split = [&](Rect r) {
            bool can_rows = r.x1 < r.x2, can_cols = r.y1 < r.y2;
            if ((!can_rows && !can_cols) || uniform_index(rng, 0, 2) == 0) {
                p.rects.push_back(r);
                return;
            }
            bool rows = can_rows && (!can_cols || uniform_index(rng, 0, 1) == 0);
            if (rows) {
                int c = r.x1 + static_cast<int>(uniform_index(rng, 0, r.x2 - r.x1 - 1));
                split({r.x1, c, r.y1, r.y2});
                split({c + 1, r.x2, r.y1, r.y2});
            } else {
                int c = r.y1 + static_cast<int>(uniform_index(rng, 0, r.y2 - r.y1 - 1));
                split({r.x1, r.x2, r.y1, c});
                split({r.x1, r.x2, c + 1, r.y2});
            }
        };
        split(Rect{1, n1, 1, n2});
        PartitionStats st = evaluate_partition(ps, p);
        Load naive = 0;
        for (const Rect &r : p.rects)
            naive = std::max(naive, oracle::naive_rect_sum(m, r.x1, r.x2, r.y1, r.y2));
        CHECK(st.lmax == naive);
    }
}

TEST_CASE("matrix view regions and transposition") {
    oracle::Mat m = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    PrefixSum2D ps = ps_of(m);
    MatrixView v(ps, Rect{2, 3, 1, 2}, false);
    CHECK(v.n1() == 2);
    CHECK(v.n2() == 2);
    CHECK(v.load(1, 1, 1, 2) == 9);   // row 2, cols 1..2
    CHECK(v.load(1, 2, 1, 1) == 11);  // rows 2..3, col 1
    MatrixView t = v.transposed_view();
    CHECK(t.n1() == 2);
    CHECK(t.load(1, 1, 1, 2) == 11);  // transposed: first dim = cols
    CHECK(t.to_global(Rect{1, 1, 1, 2}) == Rect{2, 3, 1, 1});
}
