#include "rectpart/rectilinear.hpp"

#include <algorithm>

namespace rectpart {

namespace {

std::vector<int> uniform_borders(int n, int parts) {
    // sizes differ by at most one; the remainder goes to the leading intervals
    std::vector<int> borders;
    borders.reserve(parts - 1);
    const int base = n / parts, rem = n % parts;
    for (int k = 1; k < parts; ++k) borders.push_back(k * base + std::min(k, rem));
    return borders;
}

/// Interval load on the view's second dimension = max over the fixed
/// main-dimension stripes of the stripe-restricted interval load.
class StripeMaxWorkload final : public oned::Workload {
public:
    StripeMaxWorkload(const MatrixView &view, const std::vector<int> &main_borders)
        : view_(view) {
        int prev = 0;
        for (int b : main_borders) {
            stripes_.emplace_back(prev + 1, b);
            prev = b;
        }
        stripes_.emplace_back(prev + 1, view_.n1());
    }

    int size() const override { return view_.n2(); }
    Load load(int i, int j) const override {
        if (j < i) return 0;
        Load best = 0;
        for (auto [a, b] : stripes_)
            if (a <= b) best = std::max(best, view_.load(a, b, i, j));
        return best;
    }
    // any cover's loads dominate the heaviest stripe's additive loads, whose
    // sum is exactly this workload's total, so the total/m bound stays valid
    bool total_split_bounded() const override { return true; }

private:
    MatrixView view_;
    std::vector<std::pair<int, int>> stripes_;
};

Load grid_lmax(const MatrixView &v, const std::vector<int> &rows, const std::vector<int> &cols) {
    StripeMaxWorkload w(v, rows);
    Load best = 0;
    int prev = 0;
    for (std::size_t k = 0; k <= cols.size(); ++k) {
        int hi = k == cols.size() ? v.n2() : cols[k];
        if (hi >= prev + 1) best = std::max(best, w.load(prev + 1, hi));
        prev = hi;
    }
    return best;
}

}  // namespace

Partition RectilinearPartition::expand() const {
    oned::Cuts1D rows{n1, P(), row_borders};
    oned::Cuts1D cols{n2, Q(), col_borders};
    rows = oned::canonicalize(rows);
    cols = oned::canonicalize(cols);
    Partition part{n1, n2, {}};
    part.rects.reserve(static_cast<std::size_t>(P()) * Q());
    for (int i = 0; i < rows.parts; ++i)
        for (int j = 0; j < cols.parts; ++j)
            part.rects.push_back(
                Rect{rows.begin_of(i), rows.end_of(i), cols.begin_of(j), cols.end_of(j)});
    return part;
}

RectilinearPartition rect_uniform(int n1, int n2, int P, int Q) {
    if (P < 1 || P > n1) throw InfeasibleError("row interval count out of range");
    if (Q < 1 || Q > n2) throw InfeasibleError("column interval count out of range");
    return RectilinearPartition{n1, n2, uniform_borders(n1, P), uniform_borders(n2, Q)};
}

RectilinearPartition rect_nicol(const PrefixSum2D &ps, int P, int Q,
                                std::vector<Load> *lmax_trace) {
    const int n1 = ps.n1(), n2 = ps.n2();
    if (P < 1 || P > n1) throw InfeasibleError("row interval count out of range");
    if (Q < 1 || Q > n2) throw InfeasibleError("column interval count out of range");

    const MatrixView v(ps);
    const MatrixView vt = v.transposed_view();
    RectilinearPartition part = rect_uniform(n1, n2, P, Q);
    std::vector<int> rows = part.row_borders, cols = part.col_borders;
    Load cur = grid_lmax(v, rows, cols);
    if (lmax_trace) lmax_trace->push_back(cur);

    bool rows_stable = false, cols_stable = false, refine_cols = true;
    const long long cap = static_cast<long long>(n1) * n2;
    for (long long iter = 0; iter < cap && !(rows_stable && cols_stable); ++iter) {
        if (refine_cols) {
            StripeMaxWorkload w(v, rows);
            oned::Cuts1D cuts = oned::nicol_plus(w, Q, cur);
            cur = oned::max_interval_load(w, cuts);
            cols_stable = cuts.borders == cols;
            cols = std::move(cuts.borders);
        } else {
            StripeMaxWorkload w(vt, cols);
            oned::Cuts1D cuts = oned::nicol_plus(w, P, cur);
            cur = oned::max_interval_load(w, cuts);
            rows_stable = cuts.borders == rows;
            rows = std::move(cuts.borders);
        }
        if (lmax_trace) lmax_trace->push_back(cur);
        refine_cols = !refine_cols;
    }
    part.row_borders = std::move(rows);
    part.col_borders = std::move(cols);
    return part;
}

}  // namespace rectpart
