#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rectpart/grid.hpp"
#include "rectpart/hierarchical.hpp"
#include "rectpart/jagged.hpp"

/**
 * @brief Two-phase partitioning: a coarse phase-1 split into P parts,
 * proportional processor allocation, an independent fast phase-2 run per
 * part, and a slow-refinement loop that repeatedly re-solves the worst part
 * while it strictly improves.
 */
namespace rectpart {

struct Allocation {
    std::vector<int> counts;  // one per part, each >= 1

    int total() const {
        int s = 0;
        for (int c : counts) s += c;
        return s;
    }
};

/**
 * @brief Proportional ceiling rule: part r first receives
 * ceil(load_r / total * (m - P)); any part left at zero (zero-load parts,
 * or every part when m == P) gets the mandatory minimum of one processor;
 * the leftover processors go one at a time to the part maximizing
 * load/count, ties to the lowest index. The pre-leftover sum never
 * exceeds m.
 */
Allocation allocate_processors(const std::vector<Load> &part_loads, int m);

/// max_r load_r / count_r, exact.
Rational expected_max_load(const std::vector<Load> &part_loads, const Allocation &alloc);

/// expected_max_load / (total/m) - 1; the sweep ranks candidates by the
/// exact rational expected max (same total and m), this double is reporting.
double expected_li(const std::vector<Load> &part_loads, const Allocation &alloc, int m);

enum class Phase1Algo { kHierRelaxed, kJagMHeurStripes, kJagMOpt };
enum class Phase2Algo { kJagMHeur, kJagMHeurProbe, kJagMOpt, kHierRB, kHierRelaxed };

struct HybridConfig {
    Phase1Algo phase1 = Phase1Algo::kHierRelaxed;
    Phase2Algo fast = Phase2Algo::kJagMHeurProbe;
    std::optional<Phase2Algo> slow = Phase2Algo::kJagMOpt;  // nullopt: fast only
    int P = 0;      // fixed part count for hybrid_run
    int min_P = 0;  // sweep floor; 0 = max(2, round(sqrt(m)))
    Orientation orientation = Orientation::kBest;
};

struct HybridResult {
    Partition partition;
    Load lmax = 0;
    int P = 0;
    std::vector<Rect> parts;
    Allocation alloc;
    int slow_improvements = 0;
    std::vector<Load> lmax_trace;  // global lmax after the fast phase and each kept slow run
};

/**
 * @brief Runs the two-phase scheme at cfg.P parts: phase 1, allocation,
 * fast phase 2 on every part, then while the slow algorithm strictly
 * improves the currently worst part's max load the improvement is kept;
 * the first non-improvement stops the loop.
 */
HybridResult hybrid_run(const PrefixSum2D &ps, int m, const HybridConfig &cfg);

struct SweepCandidate {
    int P = 0;
    Rational expected_max;
    double expected_imbalance = 0;
};

struct SweepResult {
    HybridResult run;
    int chosen_P = 0;
    std::vector<SweepCandidate> candidates;
};

/// Largest P in [min_P, m/2] for each distinct value of ceil((m-P)/P).
std::vector<int> sweep_candidates(int m, int min_P);

/**
 * @brief Evaluates phase 1 + allocation at every candidate P, ranks them by
 * exact expected max load (ties to the smaller P), and runs the full
 * two-phase scheme only on the winner.
 */
SweepResult p_sweep(const PrefixSum2D &ps, int m, const HybridConfig &cfg);

const char *to_string(Phase1Algo a);
const char *to_string(Phase2Algo a);
Phase1Algo phase1_from_string(const std::string &s);
Phase2Algo phase2_from_string(const std::string &s);

}  // namespace rectpart
