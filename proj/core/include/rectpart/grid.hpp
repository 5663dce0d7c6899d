#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * @brief Core data model for rectangular load partitioning: load matrices,
 * 2D prefix sums, rectangles, partitions and their quality metrics.
 *
 * Coordinates are 1-based and inclusive throughout, matching the usual
 * (x1, x2, y1, y2) rectangle notation. The prefix sum array carries a zero
 * border row/column so rectangle-load queries never branch on x1 == 1.
 */
namespace rectpart {

/// Work units. All loads are non-negative integers.
using Load = std::uint64_t;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request no valid partition can satisfy (e.g. more processors than cells).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; carries the 1-based offending line.
class ParseError : public Error {
public:
    ParseError(const std::string &what, int line)
        : Error(what + " at line " + std::to_string(line)), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// An algorithm exceeded a configured resource cap (e.g. hier_opt memo size).
class ResourceError : public Error {
public:
    using Error::Error;
};

/**
 * @brief Exact non-negative ratio of two 64-bit integers, kept reduced.
 *
 * Used wherever exact arithmetic matters (average loads, allocation
 * thresholds, bound comparisons); rendered as double only for reporting.
 */
struct Rational {
    Load num = 0;
    Load den = 1;

    Rational() = default;
    Rational(Load n, Load d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational &a, const Rational &b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational &a, const Rational &b) {
        using u128 = unsigned __int128;
        return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational &a, const Rational &b) { return !(b < a); }
    friend bool operator>(const Rational &a, const Rational &b) { return b < a; }
    friend bool operator>=(const Rational &a, const Rational &b) { return !(a < b); }
};

/// ceil(a / b) for b > 0.
inline Load ceil_div(Load a, Load b) { return a / b + (a % b != 0); }

/// An axis-aligned rectangle, 1-based inclusive coordinates.
struct Rect {
    int x1 = 1, x2 = 1, y1 = 1, y2 = 1;

    int height() const { return x2 - x1 + 1; }
    int width() const { return y2 - y1 + 1; }
    std::uint64_t area() const {
        return static_cast<std::uint64_t>(height()) * static_cast<std::uint64_t>(width());
    }
    bool well_formed() const { return x1 >= 1 && y1 >= 1 && x1 <= x2 && y1 <= y2; }
    bool inside(int n1, int n2) const { return well_formed() && x2 <= n1 && y2 <= n2; }
    bool intersects(const Rect &o) const {
        return x1 <= o.x2 && o.x1 <= x2 && y1 <= o.y2 && o.y1 <= y2;
    }
    friend bool operator==(const Rect &a, const Rect &b) {
        return a.x1 == b.x1 && a.x2 == b.x2 && a.y1 == b.y1 && a.y2 == b.y2;
    }
};

/**
 * @brief n1 x n2 matrix of non-negative integer loads.
 *
 * Construction rejects matrices whose total load would overflow the 64-bit
 * accumulator, naming the offending cell.
 */
class LoadMatrix {
public:
    LoadMatrix(int n1, int n2, std::vector<Load> cells_row_major);
    static LoadMatrix from_rows(const std::vector<std::vector<Load>> &rows);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    Load at(int x, int y) const { return cells_[idx(x, y)]; }
    Load total() const { return total_; }
    const std::vector<Load> &cells() const { return cells_; }

    friend bool operator==(const LoadMatrix &a, const LoadMatrix &b) {
        return a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.cells_ == b.cells_;
    }

private:
    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(x - 1) * n2_ + (y - 1);
    }
    int n1_, n2_;
    std::vector<Load> cells_;
    Load total_;
};

/**
 * @brief 2D prefix sum array: gamma[x][y] = sum of all cells (x' <= x, y' <= y),
 * with a zero border at x = 0 and y = 0.
 *
 * Also carries the matrix extremes so lower bounds and the max/min cell ratio
 * are available without the original matrix. All partitioning algorithms take
 * this type as input; building it is a one-pass O(n1*n2) step.
 */
class PrefixSum2D {
public:
    int n1() const { return n1_; }
    int n2() const { return n2_; }
    Load gamma(int x, int y) const { return g_[static_cast<std::size_t>(x) * (n2_ + 1) + y]; }
    Load total() const { return gamma(n1_, n2_); }
    Load max_cell() const { return max_cell_; }
    Load min_cell() const { return min_cell_; }

private:
    friend PrefixSum2D build_prefix_sum(const LoadMatrix &);
    int n1_ = 0, n2_ = 0;
    std::vector<Load> g_;
    Load max_cell_ = 0, min_cell_ = 0;
};

/// Builds the prefix sum array in one pass.
PrefixSum2D build_prefix_sum(const LoadMatrix &matrix);

/// O(1) rectangle load by four-term inclusion-exclusion. Throws on bad rects.
Load rect_load(const PrefixSum2D &ps, const Rect &r);

/// An ordered set of m rectangles; position in the list is the processor id.
struct Partition {
    int n1 = 0, n2 = 0;
    std::vector<Rect> rects;

    int m() const { return static_cast<int>(rects.size()); }
};

/// One validity defect of a partition.
struct Violation {
    enum class Kind { Overlap, OutOfBounds, Coverage };
    Kind kind;
    int a = -1, b = -1;          // rect indices (Overlap: both; OutOfBounds: a)
    std::uint64_t area_sum = 0;  // Coverage only
    std::uint64_t area_expected = 0;

    std::string message() const;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/**
 * @brief Checks disjointness (pairwise rectangle intersection, O(m^2)),
 * bounds, and coverage (sum of areas == n1*n2). A partition is valid iff
 * no violation is reported.
 */
ValidationReport validate_partition(const Partition &p);

/// Quality metrics of a partition. lavg and the imbalance are exact
/// rationals; doubles are produced only at reporting time.
struct PartitionStats {
    Load lmax = 0;
    Load total = 0;
    int m = 1;
    std::vector<Load> loads;
    double runtime_ms = 0.0;  // wall time of the producing algorithm; filled by callers

    Rational lavg_exact() const { return Rational(total, static_cast<Load>(m)); }
    double lavg() const { return lavg_exact().value(); }
    /// lmax / (total/m) - 1; exact up to the final double conversion.
    double imbalance() const {
        if (total == 0) return 0.0;
        using u128 = unsigned __int128;
        u128 n = static_cast<u128>(lmax) * static_cast<u128>(m);
        return static_cast<double>(n) / static_cast<double>(total) - 1.0;
    }
};

/// Evaluates a partition; throws if it is invalid.
PartitionStats evaluate_partition(const PrefixSum2D &ps, const Partition &p);

/// The two classic lower bounds on the optimal max load.
struct LowerBounds {
    Rational average;  // total / m
    Load max_cell;

    Load combined() const {
        Load avg_up = ceil_div(average.num, average.den);
        return avg_up > max_cell ? avg_up : max_cell;
    }
};

LowerBounds lower_bounds(const PrefixSum2D &ps, int m);

/// Aggregate cell statistics; delta = max/min is defined only when min > 0.
struct MatrixStats {
    Load total = 0;
    Load max_cell = 0;
    Load min_cell = 0;
    std::optional<Rational> delta;
};

MatrixStats matrix_stats(const PrefixSum2D &ps);

/**
 * @brief Lightweight region-plus-orientation lens over a prefix sum array.
 *
 * All partitioning internals run on views, which lets every algorithm work
 * on sub-rectangles (hybrid phase 2) and in either orientation (main
 * dimension = rows or columns) without duplicated code. When `transposed`
 * is set, the view's first dimension is the matrix's second one.
 */
class MatrixView {
public:
    explicit MatrixView(const PrefixSum2D &ps)
        : MatrixView(ps, Rect{1, ps.n1(), 1, ps.n2()}, false) {}
    MatrixView(const PrefixSum2D &ps, const Rect &region, bool transposed);

    int n1() const { return transposed_ ? region_.width() : region_.height(); }
    int n2() const { return transposed_ ? region_.height() : region_.width(); }
    Load total() const { return rect_load(*ps_, region_); }

    /// Load of the view-local rectangle (1-based inclusive view coords).
    Load load(int x1, int x2, int y1, int y2) const;

    /// Maps a view-local rectangle back to matrix coordinates.
    Rect to_global(const Rect &local) const;

    MatrixView transposed_view() const { return MatrixView(*ps_, region_, !transposed_); }
    MatrixView subview(const Rect &local) const {
        return MatrixView(*ps_, to_global(local), transposed_);
    }

    const PrefixSum2D &prefix() const { return *ps_; }
    const Rect &region() const { return region_; }
    bool transposed() const { return transposed_; }

private:
    const PrefixSum2D *ps_;
    Rect region_;
    bool transposed_;
};

}  // namespace rectpart
