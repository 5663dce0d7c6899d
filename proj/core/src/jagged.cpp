#include "rectpart/jagged.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "rectpart/hybrid.hpp"

namespace rectpart {

namespace {

constexpr Load kInf = std::numeric_limits<Load>::max();

/// Workload over the main dimension: load(i, j) = L(main i..j, full aux).
oned::ProjectionWorkload main_projection(const MatrixView &v) {
    return oned::ProjectionWorkload(v.transposed_view(), 1, v.n2());
}

/// Optimal q-way max load of main-dim stripes; monotone by inclusion,
/// memoized because the jagged optimizers query it many times per stripe.
class StripeOptWorkload final : public oned::Workload {
public:
    StripeOptWorkload(const MatrixView &v, int procs) : view_(v), procs_(procs) {}

    int size() const override { return view_.n1(); }
    Load load(int i, int j) const override {
        if (j < i) return 0;
        const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
        {
            std::scoped_lock lk(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        oned::ProjectionWorkload col(view_, i, j);
        Load v = oned::max_interval_load(col, oned::nicol_plus(col, procs_));
        std::scoped_lock lk(mu_);
        return memo_.try_emplace(key, v).first->second;
    }

private:
    MatrixView view_;
    int procs_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, Load> memo_;
};

std::vector<int> canonical_stripes(const oned::Cuts1D &cuts) {
    return oned::canonicalize(cuts).borders;
}

std::vector<std::pair<int, int>> stripe_ranges(const std::vector<int> &borders, int n) {
    std::vector<std::pair<int, int>> out;
    int prev = 0;
    for (int b : borders) {
        out.emplace_back(prev + 1, b);
        prev = b;
    }
    out.emplace_back(prev + 1, n);
    return out;
}

void check_stripe_borders(const std::vector<int> &borders, int n) {
    int prev = 0;
    for (int b : borders) {
        if (b <= prev || b >= n) throw Error("stripe borders must be strictly increasing inside (0, n)");
        prev = b;
    }
}

/// Cuts every stripe with its processor count and assembles the partition.
JaggedPartition finish(const MatrixView &v, std::vector<int> borders, std::vector<int> procs,
                       const std::vector<Load> &hints) {
    JaggedPartition part{v, std::move(borders), {}, std::move(procs), 0};
    const auto ranges = stripe_ranges(part.stripe_borders, v.n1());
    part.stripe_cuts.reserve(ranges.size());
    for (std::size_t s = 0; s < ranges.size(); ++s) {
        auto [a, b] = ranges[s];
        const int q = part.stripe_procs[s];
        if (q > v.n2())
            throw InfeasibleError("stripe processor count (" + std::to_string(q) +
                                  ") exceeds stripe width (" + std::to_string(v.n2()) + ")");
        oned::ProjectionWorkload col(v, a, b);
        Load hint = s < hints.size() ? hints[s] : 0;
        oned::Cuts1D cuts = oned::canonicalize(oned::nicol_plus(col, q, hint));
        part.lmax = std::max(part.lmax, oned::max_interval_load(col, cuts));
        part.stripe_cuts.push_back(std::move(cuts));
    }
    return part;
}

JaggedPartition build_pq_heur(const MatrixView &v, int P, int Q) {
    if (P < 1 || P > v.n1()) throw InfeasibleError("stripe count out of range");
    if (Q < 1 || Q > v.n2()) throw InfeasibleError("per-stripe processor count out of range");
    oned::ProjectionWorkload proj = main_projection(v);
    std::vector<int> borders = canonical_stripes(oned::nicol_plus(proj, P));
    return finish(v, std::move(borders), std::vector<int>(P, Q), {});
}

JaggedPartition build_pq_opt(const MatrixView &v, int P, int Q, bool use_dp) {
    if (P < 1 || P > v.n1()) throw InfeasibleError("stripe count out of range");
    if (Q < 1 || Q > v.n2()) throw InfeasibleError("per-stripe processor count out of range");
    StripeOptWorkload w(v, Q);
    oned::Cuts1D cuts = use_dp ? oned::dp_optimal_1d(w, P) : oned::nicol_plus(w, P);
    return finish(v, canonical_stripes(cuts), std::vector<int>(P, Q), {});
}

int resolve_stripe_count(int m, int P, const MatrixView &v) {
    if (P == 0) P = default_stripe_count(m, v.n1());
    if (P < 1 || P > v.n1()) throw InfeasibleError("stripe count exceeds main dimension");
    if (P > m) throw InfeasibleError("more stripes than processors");
    return P;
}

JaggedPartition build_m_heur(const MatrixView &v, int m, int P) {
    P = resolve_stripe_count(m, P, v);
    oned::ProjectionWorkload proj = main_projection(v);
    std::vector<int> borders = canonical_stripes(oned::nicol_plus(proj, P));
    std::vector<Load> loads;
    for (auto [a, b] : stripe_ranges(borders, v.n1())) loads.push_back(v.load(a, b, 1, v.n2()));
    Allocation alloc = allocate_processors(loads, m);
    return finish(v, std::move(borders), std::move(alloc.counts), {});
}

JaggedPartition build_m_probe(const MatrixView &v, const std::vector<int> &borders, int m,
                              Load feasible_hint) {
    check_stripe_borders(borders, v.n1());
    const auto ranges = stripe_ranges(borders, v.n1());
    const int P = static_cast<int>(ranges.size());
    if (m < P) throw InfeasibleError("fewer processors (" + std::to_string(m) +
                                     ") than stripes (" + std::to_string(P) + ")");
    if (static_cast<long long>(P) * v.n2() < m)
        throw InfeasibleError("m exceeds the column capacity of the given stripes");

    std::vector<oned::ProjectionWorkload> arrays;
    arrays.reserve(P);
    for (auto [a, b] : ranges) arrays.emplace_back(v, a, b);
    std::vector<const oned::Workload *> ptrs;
    for (const auto &w : arrays) ptrs.push_back(&w);

    oned::MultiCuts multi = oned::nicol_plus_multi(ptrs, m, feasible_hint);
    std::vector<int> counts(P);
    std::vector<Load> hints(P);
    for (int s = 0; s < P; ++s) {
        counts[s] = multi.per_array[s].parts;
        hints[s] = oned::max_interval_load(arrays[s], multi.per_array[s]);
    }
    // spare slots beyond a stripe's column capacity are redundant empties;
    // move them to the lowest-indexed stripe with room
    int overflow = 0;
    for (int s = 0; s < P; ++s) {
        if (counts[s] > v.n2()) {
            overflow += counts[s] - v.n2();
            counts[s] = v.n2();
        }
    }
    for (int s = 0; s < P && overflow > 0; ++s) {
        int room = v.n2() - counts[s];
        int take = std::min(room, overflow);
        counts[s] += take;
        overflow -= take;
    }
    return finish(v, borders, std::move(counts), hints);
}

JaggedPartition build_m_heur_probe(const MatrixView &v, int m, int P) {
    P = resolve_stripe_count(m, P, v);
    oned::ProjectionWorkload proj = main_projection(v);
    std::vector<int> borders = canonical_stripes(oned::nicol_plus(proj, P));
    Load hint = 0;
    try {
        std::vector<Load> loads;
        for (auto [a, b] : stripe_ranges(borders, v.n1()))
            loads.push_back(v.load(a, b, 1, v.n2()));
        Allocation alloc = allocate_processors(loads, m);
        JaggedPartition heur = finish(v, borders, std::move(alloc.counts), {});
        hint = heur.lmax;
    } catch (const InfeasibleError &) {
        // the heuristic allocation may be geometrically impossible even when
        // the optimal count assignment is not; proceed without the hint
    }
    return build_m_probe(v, borders, m, hint);
}

JaggedPartition build_m_alloc(const MatrixView &v, const std::vector<int> &procs) {
    const int P = static_cast<int>(procs.size());
    if (P < 1) throw Error("at least one stripe required");
    if (P > v.n1()) throw InfeasibleError("more stripes than main-dimension length");
    for (int q : procs) {
        if (q < 1) throw Error("every stripe needs at least one processor");
        if (q > v.n2()) throw InfeasibleError("stripe processor count exceeds stripe width");
    }
    std::unordered_map<std::uint64_t, Load> memo;
    oned::PartLoadFn fn = [&](int part, int i, int j) -> Load {
        const std::uint64_t key = (static_cast<std::uint64_t>(part) << 42) |
                                  (static_cast<std::uint64_t>(i) << 21) |
                                  static_cast<std::uint64_t>(j);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        oned::ProjectionWorkload col(v, i, j);
        Load val = oned::max_interval_load(col, oned::nicol_plus(col, procs[part]));
        return memo.try_emplace(key, val).first->second;
    };
    oned::Cuts1D cuts = oned::dp_optimal_parts(fn, v.n1(), P);
    return finish(v, cuts.borders, procs, {});
}

/**
 * Lazy DP for the optimal m-way jagged partition. L(r, q) is the optimal
 * max load of the first r main-dim lines using q processors; the stripe
 * solves 1D(i, j, x) carry [lb, ub] intervals (avg-based lower bound,
 * direct_cut upper bound) so most comparisons never need an exact solve.
 */
class JagMOptSolver {
public:
    JagMOptSolver(const MatrixView &v, int m) : v_(v), n1_(v.n1()), n2_(v.n2()), m_(m) {}

    JaggedPartition solve() {
        if (static_cast<long long>(n1_) * n2_ < m_)
            throw InfeasibleError("m exceeds the cells of the region");
        Load incumbent_val = kInf;
        std::optional<JaggedPartition> incumbent;
        try {
            incumbent = build_m_heur_probe(v_, m_, 0);
            incumbent_val = incumbent->lmax;
        } catch (const InfeasibleError &) {
        }
        Choice root = eval_candidates(n1_, m_, incumbent_val);
        if (root.k < 0) return std::move(*incumbent);

        std::vector<std::pair<int, int>> rev;  // (stripe start-1 (= k), procs)
        int r = n1_, q = m_;
        Choice c = root;
        while (true) {
            rev.emplace_back(c.k, c.x);
            r = c.k;
            q -= c.x;
            if (r == 0) break;
            const LEntry &e = memoL_.at(key2(r, q));
            c = Choice{e.v, e.k, e.x};
        }
        std::vector<int> borders, procs;
        std::vector<Load> hints;
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
            if (it->first > 0) borders.push_back(it->first);
            procs.push_back(it->second);
        }
        int prev = 0;
        for (std::size_t s = 0; s < procs.size(); ++s) {
            int hi = s + 1 == procs.size() ? n1_ : borders[s];
            DEntry *e = find_oned(prev + 1, hi, procs[s]);
            hints.push_back(e ? e->ub : 0);
            prev = hi;
        }
        return finish(v_, std::move(borders), std::move(procs), hints);
    }

private:
    struct LEntry {
        Load v;
        int k, x;
    };
    struct DEntry {
        Load lb = 0, ub = kInf;
        bool exact = false;
    };
    struct Choice {
        Load v;
        int k, x;
    };

    static std::uint64_t key2(int r, int q) {
        return (static_cast<std::uint64_t>(r) << 32) | static_cast<std::uint32_t>(q);
    }
    static std::uint64_t key3(int i, int j, int x) {
        return (static_cast<std::uint64_t>(i) << 42) | (static_cast<std::uint64_t>(j) << 21) |
               static_cast<std::uint64_t>(x);
    }

    Load stripe_total(int i, int j) const { return v_.load(i, j, 1, n2_); }

    DEntry *find_oned(int i, int j, int x) {
        auto it = memo1d_.find(key3(i, j, x));
        return it == memo1d_.end() ? nullptr : &it->second;
    }

    DEntry &oned_entry(int i, int j, int x) {
        auto [it, fresh] = memo1d_.try_emplace(key3(i, j, x));
        if (fresh) {
            oned::ProjectionWorkload col(v_, i, j);
            it->second.lb = std::max(ceil_div(col.total(), static_cast<Load>(x)), col.max_task());
            it->second.ub = oned::max_interval_load(col, oned::direct_cut(col, x));
        }
        return it->second;
    }

    Load oned_exact(int i, int j, int x, DEntry &e) {
        if (!e.exact) {
            oned::ProjectionWorkload col(v_, i, j);
            Load val = oned::max_interval_load(col, oned::nicol_plus(col, x, e.ub));
            e.lb = e.ub = val;
            e.exact = true;
        }
        return e.ub;
    }

    Load eval_L(int r, int q) {
        if (r == 0) return q == 0 ? 0 : kInf;
        if (q == 0) return kInf;
        if (static_cast<long long>(q) > static_cast<long long>(r) * n2_) return kInf;
        auto it = memoL_.find(key2(r, q));
        if (it != memoL_.end()) return it->second.v;
        Choice c = eval_candidates(r, q, kInf);
        memoL_.emplace(key2(r, q), LEntry{c.v, c.k, c.x});
        return c.v;
    }

    /// Min over (k, x) of max(L(k, q-x), 1D(k+1, r, x)), pruned against
    /// `init_best`; returns k = -1 when nothing beats it.
    Choice eval_candidates(int r, int q, Load init_best) {
        Choice best{init_best, -1, -1};
        if (q <= n2_) {  // single stripe takes everything
            DEntry &e = oned_entry(1, r, q);
            if (e.lb < best.v) {
                Load val = oned_exact(1, r, q, e);
                if (val < best.v) best = Choice{val, 0, q};
            }
        }
        const int xmax = std::min(q - 1, n2_);
        for (int x = 1; x <= xmax; ++x) {
            const int klo = std::max<int>(1, static_cast<int>(ceil_div(q - x, n2_)));
            const int khi = r - 1;
            if (klo > khi) continue;
            const Load lb_left = ceil_div(v_.load(1, klo, 1, n2_), static_cast<Load>(q - x));
            const Load lb_right = ceil_div(stripe_total(khi + 1, r), static_cast<Load>(x));
            if (std::max(lb_left, lb_right) >= best.v) continue;
            auto [k, val] = ksearch(r, q, x, klo, khi);
            if (val < best.v) best = Choice{val, k, x};
        }
        return best;
    }

    /// Bitonic search over k for fixed x, deciding comparisons from 1D bound
    /// intervals whenever possible.
    std::pair<int, Load> ksearch(int r, int q, int x, int klo, int khi) {
        auto left_ge_right = [&](int k) {
            const Load L = eval_L(k, q - x);
            DEntry &e = oned_entry(k + 1, r, x);
            if (L >= e.ub) return true;
            if (L < e.lb) return false;
            return L >= oned_exact(k + 1, r, x, e);
        };
        int a = klo, b = khi + 1;
        while (a < b) {
            int mid = a + (b - a) / 2;
            if (left_ge_right(mid))
                b = mid;
            else
                a = mid + 1;
        }
        const int cross = a;
        Load best = kInf;
        int arg = -1;
        auto consider = [&](int k) {
            const Load L = eval_L(k, q - x);
            DEntry &e = oned_entry(k + 1, r, x);
            const Load f = (L >= e.ub) ? L : std::max(L, oned_exact(k + 1, r, x, e));
            if (f < best) {
                best = f;
                arg = k;
            }
        };
        if (cross - 1 >= klo) consider(cross - 1);
        if (cross <= khi) consider(cross);
        return {arg, best};
    }

    MatrixView v_;
    int n1_, n2_, m_;
    std::unordered_map<std::uint64_t, LEntry> memoL_;
    std::unordered_map<std::uint64_t, DEntry> memo1d_;
};

template <class Build>
JaggedPartition with_orientation(const MatrixView &base, Orientation o, Build build) {
    if (base.transposed()) throw Error("pass an untransposed view");
    if (o == Orientation::kHor) return build(base);
    if (o == Orientation::kVer) return build(base.transposed_view());
    std::optional<JaggedPartition> hor, ver;
    try {
        hor = build(base);
    } catch (const InfeasibleError &) {
    }
    try {
        ver = build(base.transposed_view());
    } catch (const InfeasibleError &) {
        if (!hor) throw;
    }
    if (!hor) return std::move(*ver);
    if (!ver) return std::move(*hor);
    return ver->lmax < hor->lmax ? std::move(*ver) : std::move(*hor);
}

}  // namespace

const char *to_string(Orientation o) {
    switch (o) {
        case Orientation::kHor: return "hor";
        case Orientation::kVer: return "ver";
        case Orientation::kBest: return "best";
    }
    return "?";
}

int JaggedPartition::m() const {
    int s = 0;
    for (int q : stripe_procs) s += q;
    return s;
}

Partition JaggedPartition::expand() const {
    Partition part{view.prefix().n1(), view.prefix().n2(), {}};
    part.rects.reserve(static_cast<std::size_t>(m()));
    int prev = 0;
    for (std::size_t s = 0; s < stripe_cuts.size(); ++s) {
        const int hi = s + 1 == stripe_cuts.size() ? view.n1() : stripe_borders[s];
        const oned::Cuts1D &cuts = stripe_cuts[s];
        for (int k = 0; k < cuts.parts; ++k)
            part.rects.push_back(
                view.to_global(Rect{prev + 1, hi, cuts.begin_of(k), cuts.end_of(k)}));
        prev = hi;
    }
    return part;
}

int default_stripe_count(int m, int main_len) {
    int p = static_cast<int>(std::llround(std::sqrt(static_cast<double>(m))));
    return std::clamp(p, 1, std::min(main_len, m));
}

JaggedPartition jag_pq_heur(const MatrixView &base, int P, int Q, Orientation o) {
    return with_orientation(base, o, [&](const MatrixView &v) { return build_pq_heur(v, P, Q); });
}
JaggedPartition jag_pq_heur(const PrefixSum2D &ps, int P, int Q, Orientation o) {
    return jag_pq_heur(MatrixView(ps), P, Q, o);
}

JaggedPartition jag_pq_opt_nicol(const MatrixView &base, int P, int Q, Orientation o) {
    return with_orientation(base, o,
                            [&](const MatrixView &v) { return build_pq_opt(v, P, Q, false); });
}
JaggedPartition jag_pq_opt_nicol(const PrefixSum2D &ps, int P, int Q, Orientation o) {
    return jag_pq_opt_nicol(MatrixView(ps), P, Q, o);
}

JaggedPartition jag_pq_opt_dp(const MatrixView &base, int P, int Q, Orientation o) {
    return with_orientation(base, o,
                            [&](const MatrixView &v) { return build_pq_opt(v, P, Q, true); });
}
JaggedPartition jag_pq_opt_dp(const PrefixSum2D &ps, int P, int Q, Orientation o) {
    return jag_pq_opt_dp(MatrixView(ps), P, Q, o);
}

JaggedPartition jag_m_heur(const MatrixView &base, int m, int P, Orientation o) {
    if (m < 1) throw Error("m must be at least 1");
    return with_orientation(base, o, [&](const MatrixView &v) { return build_m_heur(v, m, P); });
}
JaggedPartition jag_m_heur(const PrefixSum2D &ps, int m, int P, Orientation o) {
    return jag_m_heur(MatrixView(ps), m, P, o);
}

JaggedPartition jag_m_probe(const MatrixView &base, const std::vector<int> &stripe_borders,
                            int m, Orientation o, Load feasible_hint) {
    if (m < 1) throw Error("m must be at least 1");
    if (o == Orientation::kBest)
        throw Error("explicit stripe borders require a fixed orientation");
    return with_orientation(base, o, [&](const MatrixView &v) {
        return build_m_probe(v, stripe_borders, m, feasible_hint);
    });
}
JaggedPartition jag_m_probe(const PrefixSum2D &ps, const std::vector<int> &stripe_borders,
                            int m, Orientation o, Load feasible_hint) {
    return jag_m_probe(MatrixView(ps), stripe_borders, m, o, feasible_hint);
}

JaggedPartition jag_m_alloc(const MatrixView &base, const std::vector<int> &stripe_procs,
                            Orientation o) {
    if (o == Orientation::kBest)
        throw Error("explicit stripe allocation requires a fixed orientation");
    return with_orientation(base, o,
                            [&](const MatrixView &v) { return build_m_alloc(v, stripe_procs); });
}
JaggedPartition jag_m_alloc(const PrefixSum2D &ps, const std::vector<int> &stripe_procs,
                            Orientation o) {
    return jag_m_alloc(MatrixView(ps), stripe_procs, o);
}

JaggedPartition jag_m_heur_probe(const MatrixView &base, int m, int P, Orientation o) {
    if (m < 1) throw Error("m must be at least 1");
    return with_orientation(base, o,
                            [&](const MatrixView &v) { return build_m_heur_probe(v, m, P); });
}
JaggedPartition jag_m_heur_probe(const PrefixSum2D &ps, int m, int P, Orientation o) {
    return jag_m_heur_probe(MatrixView(ps), m, P, o);
}

JaggedPartition jag_m_opt(const MatrixView &base, int m, Orientation o) {
    if (m < 1) throw Error("m must be at least 1");
    return with_orientation(base, o, [&](const MatrixView &v) {
        JagMOptSolver solver(v, m);
        return solver.solve();
    });
}
JaggedPartition jag_m_opt(const PrefixSum2D &ps, int m, Orientation o) {
    return jag_m_opt(MatrixView(ps), m, o);
}

}  // namespace rectpart
