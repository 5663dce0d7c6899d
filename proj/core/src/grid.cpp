#include "rectpart/grid.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace rectpart {

Rational::Rational(Load n, Load d) : num(n), den(d) {
    if (den == 0) throw Error("rational with zero denominator");
    Load g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
}

LoadMatrix::LoadMatrix(int n1, int n2, std::vector<Load> cells_row_major)
    : n1_(n1), n2_(n2), cells_(std::move(cells_row_major)), total_(0) {
    if (n1_ < 1 || n2_ < 1)
        throw Error("matrix dimensions must be at least 1x1");
    if (cells_.size() != static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_))
        throw Error("cell count does not match dimensions");
    constexpr Load kMax = std::numeric_limits<Load>::max();
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i] > kMax - total_) {
            int x = static_cast<int>(i / n2_) + 1;
            int y = static_cast<int>(i % n2_) + 1;
            throw Error("total load overflows 64-bit accumulator at cell (" +
                        std::to_string(x) + "," + std::to_string(y) + ")");
        }
        total_ += cells_[i];
    }
}

LoadMatrix LoadMatrix::from_rows(const std::vector<std::vector<Load>> &rows) {
    if (rows.empty()) throw Error("matrix dimensions must be at least 1x1");
    std::size_t n2 = rows.front().size();
    std::vector<Load> cells;
    cells.reserve(rows.size() * n2);
    for (const auto &row : rows) {
        if (row.size() != n2) throw Error("ragged rows");
        cells.insert(cells.end(), row.begin(), row.end());
    }
    return LoadMatrix(static_cast<int>(rows.size()), static_cast<int>(n2), std::move(cells));
}

PrefixSum2D build_prefix_sum(const LoadMatrix &matrix) {
    PrefixSum2D ps;
    ps.n1_ = matrix.n1();
    ps.n2_ = matrix.n2();
    const int n1 = ps.n1_, n2 = ps.n2_;
    ps.g_.assign(static_cast<std::size_t>(n1 + 1) * (n2 + 1), 0);
    ps.max_cell_ = 0;
    ps.min_cell_ = std::numeric_limits<Load>::max();
    for (int x = 1; x <= n1; ++x) {
        Load row_run = 0;
        for (int y = 1; y <= n2; ++y) {
            Load c = matrix.at(x, y);
            ps.max_cell_ = std::max(ps.max_cell_, c);
            ps.min_cell_ = std::min(ps.min_cell_, c);
            row_run += c;
            ps.g_[static_cast<std::size_t>(x) * (n2 + 1) + y] =
                ps.g_[static_cast<std::size_t>(x - 1) * (n2 + 1) + y] + row_run;
        }
    }
    return ps;
}

Load rect_load(const PrefixSum2D &ps, const Rect &r) {
    if (!r.inside(ps.n1(), ps.n2()))
        throw Error("rectangle out of bounds");
    return ps.gamma(r.x2, r.y2) - ps.gamma(r.x1 - 1, r.y2) - ps.gamma(r.x2, r.y1 - 1) +
           ps.gamma(r.x1 - 1, r.y1 - 1);
}

std::string Violation::message() const {
    switch (kind) {
        case Kind::Overlap:
            return "overlap: rect " + std::to_string(a) + ", rect " + std::to_string(b);
        case Kind::OutOfBounds:
            return "out-of-bounds: rect " + std::to_string(a);
        case Kind::Coverage:
            return "coverage: area " + std::to_string(area_sum) + " != " +
                   std::to_string(area_expected);
    }
    return "unknown violation";
}

ValidationReport validate_partition(const Partition &p) {
    ValidationReport rep;
    const int m = p.m();
    std::uint64_t area_sum = 0;
    for (int i = 0; i < m; ++i) {
        const Rect &r = p.rects[i];
        if (!r.inside(p.n1, p.n2)) {
            rep.violations.push_back({Violation::Kind::OutOfBounds, i, -1, 0, 0});
            continue;
        }
        area_sum += r.area();
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (p.rects[i].well_formed() && p.rects[j].well_formed() &&
                p.rects[i].intersects(p.rects[j]))
                rep.violations.push_back({Violation::Kind::Overlap, i, j, 0, 0});
    std::uint64_t expected = static_cast<std::uint64_t>(p.n1) * static_cast<std::uint64_t>(p.n2);
    if (area_sum != expected)
        rep.violations.push_back({Violation::Kind::Coverage, -1, -1, area_sum, expected});
    return rep;
}

PartitionStats evaluate_partition(const PrefixSum2D &ps, const Partition &p) {
    if (p.n1 != ps.n1() || p.n2 != ps.n2())
        throw Error("partition dimensions do not match the matrix");
    ValidationReport rep = validate_partition(p);
    if (!rep.ok())
        throw Error("invalid partition: " + rep.violations.front().message());
    PartitionStats st;
    st.m = p.m();
    st.total = ps.total();
    st.loads.reserve(p.rects.size());
    for (const Rect &r : p.rects) {
        Load l = rect_load(ps, r);
        st.loads.push_back(l);
        st.lmax = std::max(st.lmax, l);
    }
    return st;
}

LowerBounds lower_bounds(const PrefixSum2D &ps, int m) {
    if (m < 1) throw Error("processor count must be at least 1");
    return LowerBounds{Rational(ps.total(), static_cast<Load>(m)), ps.max_cell()};
}

MatrixStats matrix_stats(const PrefixSum2D &ps) {
    MatrixStats st;
    st.total = ps.total();
    st.max_cell = ps.max_cell();
    st.min_cell = ps.min_cell();
    if (st.min_cell > 0) st.delta = Rational(st.max_cell, st.min_cell);
    return st;
}

MatrixView::MatrixView(const PrefixSum2D &ps, const Rect &region, bool transposed)
    : ps_(&ps), region_(region), transposed_(transposed) {
    if (!region.inside(ps.n1(), ps.n2()))
        throw Error("view region out of bounds");
}

Load MatrixView::load(int x1, int x2, int y1, int y2) const {
    if (x2 < x1 || y2 < y1) return 0;
    return rect_load(*ps_, to_global(Rect{x1, x2, y1, y2}));
}

Rect MatrixView::to_global(const Rect &local) const {
    Rect r = local;
    if (transposed_) std::swap(r.x1, r.y1), std::swap(r.x2, r.y2);
    r.x1 += region_.x1 - 1;
    r.x2 += region_.x1 - 1;
    r.y1 += region_.y1 - 1;
    r.y2 += region_.y1 - 1;
    return r;
}

}  // namespace rectpart
