#pragma once

#include <vector>

#include "rectpart/grid.hpp"
#include "rectpart/oned.hpp"

/**
 * @brief P x Q grid partitioners: uniform area split and the iterative
 * refinement heuristic that alternately re-optimizes one dimension's borders
 * with an optimal 1D solve while the other dimension stays fixed.
 */
namespace rectpart {

/// A P x Q grid: row borders shared by every column stripe and vice versa.
struct RectilinearPartition {
    int n1 = 0, n2 = 0;
    std::vector<int> row_borders;  // P-1 non-decreasing indices in [0, n1]
    std::vector<int> col_borders;  // Q-1 non-decreasing indices in [0, n2]

    int P() const { return static_cast<int>(row_borders.size()) + 1; }
    int Q() const { return static_cast<int>(col_borders.size()) + 1; }

    /// P*Q rects in row-major processor order (empty grid lines are reified
    /// as single rows/columns, which never increases any cell's load).
    Partition expand() const;
};

/// Splits both dimensions into intervals of near-equal size; the remainder
/// is spread one cell at a time over the leading intervals.
RectilinearPartition rect_uniform(int n1, int n2, int P, int Q);

/**
 * @brief Iterative refinement: starting from the uniform grid, re-optimize
 * the column borders (then rows, then columns, ...) with nicol_plus over a
 * workload whose interval load is the max over the fixed dimension's stripes.
 * Stops when two consecutive refinements leave both border sets unchanged
 * (safety cap n1*n2 refinements). The grid's max load never increases from
 * one refinement to the next; `lmax_trace`, when given, records it after
 * the initial grid and after each refinement.
 */
RectilinearPartition rect_nicol(const PrefixSum2D &ps, int P, int Q,
                                std::vector<Load> *lmax_trace = nullptr);

}  // namespace rectpart
