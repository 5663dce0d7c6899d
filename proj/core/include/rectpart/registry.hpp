#pragma once

#include <string>
#include <vector>

#include "rectpart/grid.hpp"
#include "rectpart/hierarchical.hpp"
#include "rectpart/hybrid.hpp"
#include "rectpart/jagged.hpp"

/**
 * @brief Name-based dispatch over every partitioning algorithm, with the
 * experimental defaults (P = Q = sqrt(m) for grid and P x Q jagged methods,
 * round(sqrt(m)) stripes for m-way methods, BEST orientation, LOAD variant).
 * The CLI, the benchmark harness and the end-to-end fuzz tests all go
 * through this table.
 */
namespace rectpart::algos {

/// Flag combinations that cannot be interpreted (missing P for non-square m,
/// unknown names, inconsistent stripe lists). The CLI maps these to exit 2.
class UsageError : public Error {
public:
    using Error::Error;
};

struct Params {
    int m = 1;
    int P = 0;  // 0 = derive; for hybrid: fixed part count (0 = sweep)
    int Q = 0;  // 0 = derive
    Orientation orientation = Orientation::kBest;
    HierVariant variant = HierVariant::kLoad;
    std::vector<int> stripe_procs;  // jag-m-alloc; empty = balanced split
    int min_P = 0;                  // hybrid sweep floor; 0 = default
    std::string phase1 = "hier-relaxed";
    std::string phase2_fast = "jag-m-heur-probe";
    std::string phase2_slow = "jag-m-opt";  // "none" disables the slow loop
};

struct RunResult {
    Partition partition;
    double runtime_ms = 0.0;
    int P_used = 0, Q_used = 0;  // 0 = not applicable
    std::string variant_used;    // resolved orientation or hier variant
};

/// Every algorithm id, in the order the benchmark harness uses.
const std::vector<std::string> &algorithm_ids();
bool is_known_algorithm(const std::string &id);

/// Runs one algorithm; runtime_ms covers the algorithm call only (the
/// prefix sum array is an input, matching how partitioner timings are
/// usually reported).
RunResult run_algorithm(const std::string &id, const PrefixSum2D &ps, const Params &params);

}  // namespace rectpart::algos
