#pragma once

#include <vector>

#include "rectpart/grid.hpp"
#include "rectpart/oned.hpp"

/**
 * @brief P x Q-way and m-way jagged partitioners.
 *
 * A jagged partition splits the main dimension into P stripes and cuts each
 * stripe independently on the auxiliary dimension. P x Q-way variants give
 * every stripe Q processors; m-way variants let the per-stripe counts vary.
 *
 * Every entry point exists in two forms: the primary one runs on a
 * MatrixView (so hybrid phase 2 can partition sub-rectangles), and a
 * convenience wrapper takes the whole matrix. The view passed in must be
 * untransposed; the orientation argument decides the main dimension
 * (kHor = first dimension, kVer = second, kBest = run both and keep the
 * lower max load, ties to kHor).
 */
namespace rectpart {

enum class Orientation { kHor, kVer, kBest };

const char *to_string(Orientation o);

/// A fully resolved jagged partition, stored in the oriented view's frame.
struct JaggedPartition {
    MatrixView view;                      // oriented: main dimension = view's first
    std::vector<int> stripe_borders;      // P-1 strictly increasing main-dim borders
    std::vector<oned::Cuts1D> stripe_cuts;  // canonical aux-dim cuts per stripe
    std::vector<int> stripe_procs;        // processors per stripe, sums to m
    Load lmax = 0;                        // realized max rectangle load

    int P() const { return static_cast<int>(stripe_procs.size()); }
    int m() const;
    Orientation orientation() const {
        return view.transposed() ? Orientation::kVer : Orientation::kHor;
    }
    /// Rects in matrix coordinates, stripe-major order. The result is a
    /// partition of the view's region (the whole matrix unless a sub-view
    /// was partitioned).
    Partition expand() const;
};

/// round(sqrt(m)) clamped to [1, min(main_len, m)]; the default stripe count.
int default_stripe_count(int m, int main_len);

/// Optimal 1D split of the main dimension, then an optimal Q-way split of
/// each stripe. P, Q >= 1; P (Q) may not exceed the main (aux) length.
JaggedPartition jag_pq_heur(const MatrixView &base, int P, int Q,
                            Orientation o = Orientation::kBest);
JaggedPartition jag_pq_heur(const PrefixSum2D &ps, int P, int Q,
                            Orientation o = Orientation::kBest);

/// Optimal P x Q-way jagged partition: nicol_plus over the workload whose
/// interval load is the optimal Q-way max load of the stripe (monotone by
/// inclusion, which is what makes the 1D engine applicable).
JaggedPartition jag_pq_opt_nicol(const MatrixView &base, int P, int Q,
                                 Orientation o = Orientation::kBest);
JaggedPartition jag_pq_opt_nicol(const PrefixSum2D &ps, int P, int Q,
                                 Orientation o = Orientation::kBest);

/// Same optimum as jag_pq_opt_nicol through the dynamic-programming 1D
/// engine; the two are mutual oracles and must agree on every input.
JaggedPartition jag_pq_opt_dp(const MatrixView &base, int P, int Q,
                              Orientation o = Orientation::kBest);
JaggedPartition jag_pq_opt_dp(const PrefixSum2D &ps, int P, int Q,
                              Orientation o = Orientation::kBest);

/**
 * @brief m-way heuristic: optimal P-stripe split of the main dimension,
 * proportional processor allocation Q_S = ceil((m-P) * stripe_load / total)
 * with a mandatory minimum of one processor per stripe, leftovers one by one
 * to the stripe maximizing load/Q_S (ties to the lowest stripe), then an
 * optimal Q_S-way split per stripe. P = 0 selects the default stripe count.
 */
JaggedPartition jag_m_heur(const MatrixView &base, int m, int P = 0,
                           Orientation o = Orientation::kBest);
JaggedPartition jag_m_heur(const PrefixSum2D &ps, int m, int P = 0,
                           Orientation o = Orientation::kBest);

/**
 * @brief Optimal m-way jagged partition for FIXED stripe borders: a
 * multi-array nicol_plus jointly picks the per-stripe processor counts and
 * cuts. Borders are main-dimension indices, strictly increasing; requires
 * m >= stripe count. Orientation must be kHor or kVer (explicit borders pin
 * the main dimension).
 */
JaggedPartition jag_m_probe(const MatrixView &base, const std::vector<int> &stripe_borders,
                            int m, Orientation o = Orientation::kHor,
                            Load feasible_hint = 0);
JaggedPartition jag_m_probe(const PrefixSum2D &ps, const std::vector<int> &stripe_borders,
                            int m, Orientation o = Orientation::kHor,
                            Load feasible_hint = 0);

/**
 * @brief Optimal stripe borders for a FIXED processor-count sequence
 * (stripe i gets stripe_procs[i], in order). Exact DP over (row prefix,
 * stripe); the per-stripe interval load is the optimal q_i-way max load.
 * Orientation must be kHor or kVer.
 */
JaggedPartition jag_m_alloc(const MatrixView &base, const std::vector<int> &stripe_procs,
                            Orientation o = Orientation::kHor);
JaggedPartition jag_m_alloc(const PrefixSum2D &ps, const std::vector<int> &stripe_procs,
                            Orientation o = Orientation::kHor);

/// jag_m_heur's stripes followed by jag_m_probe; never worse than jag_m_heur
/// on the same stripe count.
JaggedPartition jag_m_heur_probe(const MatrixView &base, int m, int P = 0,
                                 Orientation o = Orientation::kBest);
JaggedPartition jag_m_heur_probe(const PrefixSum2D &ps, int m, int P = 0,
                                 Orientation o = Orientation::kBest);

/**
 * @brief Optimal m-way jagged partition by dynamic programming over
 * (main-dimension prefix, processor count). The last-stripe start is found
 * by binary search (the max of the two sides is bitonic in it); 1D stripe
 * solves keep [lower, upper] bound intervals and are evaluated exactly only
 * when the comparison cannot be decided from the bounds; the incumbent from
 * jag_m_heur_probe prunes root candidates. All pruning is result-invariant.
 */
JaggedPartition jag_m_opt(const MatrixView &base, int m, Orientation o = Orientation::kBest);
JaggedPartition jag_m_opt(const PrefixSum2D &ps, int m, Orientation o = Orientation::kBest);

}  // namespace rectpart
