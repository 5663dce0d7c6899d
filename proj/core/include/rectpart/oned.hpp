#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "rectpart/grid.hpp"

/**
 * @brief 1D partitioning engines over an abstract monotone workload, used
 * directly and as subroutines by every 2D algorithm.
 *
 * A Workload is any structure with interval loads that are monotone
 * non-decreasing by inclusion. Plain arrays and matrix projections are
 * additive on top of that, which unlocks the prefix-inversion (array
 * slicing) fast path in probe; the stripe-optimum workloads used by the
 * jagged optimizers are monotone but not additive.
 */
namespace rectpart::oned {

/// Abstract 1D workload: n tasks, O(1)-ish interval-load queries.
class Workload {
public:
    virtual ~Workload() = default;

    virtual int size() const = 0;
    /// Load of tasks [i, j], 1-based inclusive; j < i yields 0.
    virtual Load load(int i, int j) const = 0;

    Load total() const { return size() == 0 ? 0 : load(1, size()); }
    /// True when load(i,k) = load(i,j) + load(j+1,k); enables sliced probing.
    virtual bool additive() const { return false; }
    /// Max single-task load, or 0 when unknown. Valid lower bound usage only.
    virtual Load max_task() const { return 0; }
    /// True when every cover by consecutive intervals satisfies
    /// sum(interval loads) >= total(), which makes ceil(total/m) a valid
    /// lower bound on the optimal max load. Additive workloads qualify, and
    /// so do maxima over additive components; the stripe-optimum workloads
    /// of the jagged optimizers do NOT (optimal stripe values are not
    /// subadditive under row concatenation), so they keep the default.
    virtual bool total_split_bounded() const { return additive(); }
};

/// Workload backed by an explicit array of task loads.
class ArrayWorkload final : public Workload {
public:
    explicit ArrayWorkload(const std::vector<Load> &tasks);

    int size() const override { return static_cast<int>(prefix_.size()) - 1; }
    Load load(int i, int j) const override {
        return j < i ? 0 : prefix_[j] - prefix_[i - 1];
    }
    bool additive() const override { return true; }
    Load max_task() const override { return max_task_; }

private:
    std::vector<Load> prefix_;  // prefix_[k] = load of tasks 1..k, prefix_[0] = 0
    Load max_task_;
};

/**
 * @brief Projection of a matrix stripe onto the view's second dimension:
 * task y has load L(rows, y), and interval loads are O(1) prefix queries.
 */
class ProjectionWorkload final : public Workload {
public:
    ProjectionWorkload(const MatrixView &view, int rowlo, int rowhi);

    int size() const override { return view_.n2(); }
    Load load(int i, int j) const override {
        return j < i ? 0 : view_.load(rowlo_, rowhi_, i, j);
    }
    bool additive() const override { return true; }
    Load max_task() const override { return max_task_; }

private:
    MatrixView view_;
    int rowlo_, rowhi_;
    Load max_task_;
};

/// Column workload of matrix rows [rowlo, rowhi]: load(i,j) = L(rowlo..rowhi, i..j).
ProjectionWorkload workload_from_columns(const PrefixSum2D &ps, int rowlo, int rowhi);
/// Row workload of matrix columns [collo, colhi]: load(i,j) = L(i..j, collo..colhi).
ProjectionWorkload workload_from_rows(const PrefixSum2D &ps, int collo, int colhi);

/**
 * @brief m consecutive intervals over tasks 1..n, encoded as m-1
 * non-decreasing borders; interval k is (borders[k-1], borders[k]].
 * Empty intervals are legal (needed when m exceeds the distinct cut
 * positions a load profile offers).
 */
struct Cuts1D {
    int n = 0;
    int parts = 1;
    std::vector<int> borders;  // parts-1 values in [0, n], non-decreasing

    int begin_of(int k) const { return (k == 0 ? 0 : borders[k - 1]) + 1; }
    int end_of(int k) const { return k + 1 == parts ? n : borders[k]; }
    bool empty_interval(int k) const { return end_of(k) < begin_of(k); }

    friend bool operator==(const Cuts1D &a, const Cuts1D &b) {
        return a.n == b.n && a.parts == b.parts && a.borders == b.borders;
    }
};

/// Loads of every interval of `cuts` under workload `w`.
std::vector<Load> interval_loads(const Workload &w, const Cuts1D &cuts);
/// Max interval load of `cuts` under `w`.
Load max_interval_load(const Workload &w, const Cuts1D &cuts);

/**
 * @brief Reshapes cuts so every interval holds at least one task (parts <= n
 * required, else InfeasibleError). Every reshaped interval is a subset of an
 * original interval or a single task, so no interval load ever increases.
 * Geometric expansion of 2D partitions relies on this.
 */
Cuts1D canonicalize(const Cuts1D &cuts);

/**
 * @brief Greedy heuristic: cut k is placed at the first index where the
 * prefix load reaches k/m of the total (exact rational comparison).
 * Guarantees lmax <= total/m + max task load.
 */
Cuts1D direct_cut(const Workload &w, int parts);

/**
 * @brief Recursive bisection: splits at the point minimizing the larger
 * per-processor share of the two halves (weights floor(m/2), m - floor(m/2)),
 * then recurses. Same lmax guarantee as direct_cut.
 */
Cuts1D recursive_bisection_1d(const Workload &w, int parts);

/**
 * @brief Optimal partition by dynamic programming over (tasks, parts);
 * the inner minimization is a binary search over the bitonic
 * max(D[p-1][k], load(k+1, i)). Ties break toward the smallest cut index.
 */
Cuts1D dp_optimal_1d(const Workload &w, int parts);

/// Selects the probe cut-search implementation; results are identical.
enum class SearchPath { kAuto, kPlain, kSliced };

struct ProbeResult {
    bool feasible = false;
    Cuts1D cuts;       // greedy maximal intervals; on failure, the prefix covered
    Load max_load = 0; // max interval load actually realized by `cuts`
};

/**
 * @brief Feasibility test: can the workload be covered by `parts` intervals
 * of load <= target? Greedy maximal intervals, one binary search per cut;
 * the sliced path inverts the prefix function in chunks of ~n/m and must
 * return exactly the same cuts as the plain path.
 */
ProbeResult probe(const Workload &w, int parts, Load target,
                  SearchPath path = SearchPath::kAuto);

/**
 * @brief Optimal partition via parametric search: realizable bottleneck
 * candidates are probed while per-cut index windows and a feasible/infeasible
 * value bracket shrink around the optimum. Matches dp_optimal_1d's lmax on
 * every input. `feasible_hint`, when non-zero, must be an achievable max
 * load; it primes the bracket (0 = none).
 */
Cuts1D nicol_plus(const Workload &w, int parts, Load feasible_hint = 0);

/// Per-array cuts; processor counts are the per-array part counts.
struct MultiCuts {
    std::vector<Cuts1D> per_array;

    int total_parts() const {
        int s = 0;
        for (const auto &c : per_array) s += c.parts;
        return s;
    }
};

struct ProbeMultiResult {
    bool feasible = false;
    MultiCuts cuts;
    Load max_load = 0;
};

/**
 * @brief Multi-array feasibility: greedily covers each array with maximal
 * intervals of load <= target; feasible iff the interval count sum is at
 * most `parts`. Spare processors become empty intervals appended to the
 * last array. Chunked prefix inversion (chunk size ~ n*P/m) is again a
 * result-invariant internal optimization.
 */
ProbeMultiResult probe_multi(std::span<const Workload *const> arrays, int parts,
                             Load target, SearchPath path = SearchPath::kAuto);

/**
 * @brief Optimal multi-array partition: minimal achievable max interval load
 * over every way of splitting `parts` processors across the arrays and
 * cutting each. Nicol-style scan over the arrays' intervals in probe order,
 * with the value bracket and per-cut windows carried across probes.
 */
MultiCuts nicol_plus_multi(std::span<const Workload *const> arrays, int parts,
                           Load feasible_hint = 0);

/**
 * @brief Reference route to the same optimum: plain binary search on the
 * target value over probe_multi. Kept public so the two independent routes
 * can be compared; they must agree on the achieved max load.
 */
MultiCuts target_bisection_multi(std::span<const Workload *const> arrays, int parts,
                                 Load feasible_hint = 0);

/// Interval-load oracle that depends on which part an interval lands in.
using PartLoadFn = std::function<Load(int part, int lo, int hi)>;

/**
 * @brief Optimal split of tasks 1..n into exactly `parts` consecutive
 * NON-EMPTY intervals, where interval k costs fn(k, lo, hi) (monotone by
 * inclusion per part). Exact DP with a full scan over the last interval
 * start: with part-dependent costs the prefix optimum is not monotone in
 * the task count, so the bitonic binary search is not sound here.
 * Drives the fixed-allocation jagged optimizer.
 */
Cuts1D dp_optimal_parts(const PartLoadFn &fn, int n, int parts);

}  // namespace rectpart::oned
