#pragma once

#include <cstddef>
#include <vector>

#include "rectpart/grid.hpp"

/**
 * @brief Recursive bipartition algorithms: recursive bisection (HIER-RB
 * style), the relaxed average-load heuristic, and the exact memoized
 * optimizer over all bisection trees.
 */
namespace rectpart {

/// Axis-selection policy at each tree node.
enum class HierVariant {
    kLoad,  // evaluate both axes, keep the better estimated max (ties: rows)
    kDist,  // cut the longer dimension (ties: rows)
    kHor,   // alternate axes by depth, starting with rows
    kVer,   // alternate axes by depth, starting with columns
};

const char *to_string(HierVariant v);

struct BisectionNode {
    Rect rect;            // matrix coordinates
    int procs = 1;
    bool cut_rows = true; // meaningful for internal nodes
    int cut = 0;          // last row/column index of the left child
    int left = -1, right = -1;  // node indices; -1 marks a leaf
};

struct BisectionTree {
    int n1 = 0, n2 = 0;   // matrix dimensions
    std::vector<BisectionNode> nodes;  // nodes[0] is the root
    Load lmax = 0;

    int m() const;
    /// Leaves in left-to-right tree order; a partition of the root rect.
    Partition expand() const;
};

/**
 * @brief Recursive bisection: each node splits its rectangle into two parts
 * of (approximately) equal per-processor load with j = floor(m/2); for odd m
 * both assignments of the extra processor are tried and the better kept.
 * The cut is a binary search over the bitonic weighted max. If the chosen
 * axis admits no cut (length 1, or a child would get fewer cells than
 * processors), the other axis is used; if neither does, InfeasibleError.
 */
BisectionTree hier_rb(const PrefixSum2D &ps, int m, HierVariant variant = HierVariant::kLoad);
BisectionTree hier_rb(const PrefixSum2D &ps, const Rect &region, int m, HierVariant variant);

/**
 * @brief Relaxed heuristic derived from the exact recurrence: at each node
 * the axis (per variant), cut position, and processor split j in [1, m-1]
 * are chosen jointly to minimize max(L_left/j, L_right/(m-j)); both parts
 * are then partitioned recursively.
 */
BisectionTree hier_relaxed(const PrefixSum2D &ps, int m,
                           HierVariant variant = HierVariant::kLoad);
BisectionTree hier_relaxed(const PrefixSum2D &ps, const Rect &region, int m,
                           HierVariant variant);

struct HierOptOptions {
    /// Cap on memoized subproblems; (x1,x2,y1,y2,m) states grow as
    /// n1^2 * n2^2 * m, so the exact optimizer is for small instances only.
    std::size_t memo_cap = 20'000'000;
};

/**
 * @brief Optimal hierarchical bipartition by lazy memoized recursion over
 * (rectangle, processor count); cut positions are binary searches over the
 * bitonic max of the two children. Throws ResourceError when the memo
 * exceeds the configured cap.
 */
BisectionTree hier_opt(const PrefixSum2D &ps, int m, HierOptOptions options = {});
BisectionTree hier_opt(const PrefixSum2D &ps, const Rect &region, int m,
                       HierOptOptions options = {});

}  // namespace rectpart
