#include "rectpart/registry.hpp"

#include <chrono>
#include <cmath>

#include "rectpart/rectilinear.hpp"

namespace rectpart::algos {

namespace {

int isqrt_exact(int m) {
    int s = static_cast<int>(std::llround(std::sqrt(static_cast<double>(m))));
    return s * s == m ? s : 0;
}

/// P, Q for the grid-shaped algorithms: explicit flags first, then the
/// square root of m, else a usage error.
std::pair<int, int> resolve_pq(const Params &p) {
    int P = p.P, Q = p.Q;
    if (P == 0 && Q == 0) {
        int s = isqrt_exact(p.m);
        if (s == 0)
            throw UsageError("m is not a square; pass --p (and optionally --q)");
        return {s, s};
    }
    if (P == 0 || Q == 0) {
        int given = P == 0 ? Q : P;
        if (given < 1 || p.m % given != 0)
            throw UsageError("P*Q must equal m; cannot derive the missing factor");
        int other = p.m / given;
        return P == 0 ? std::pair{other, Q} : std::pair{P, other};
    }
    if (static_cast<long long>(P) * Q != p.m)
        throw UsageError("P*Q must equal m");
    return {P, Q};
}

/// Main-dimension length under an orientation (for default stripe counts).
std::vector<int> uniform_main_borders(int len, int P) {
    std::vector<int> borders;
    const int base = len / P, rem = len % P;
    for (int k = 1; k < P; ++k) borders.push_back(k * base + std::min(k, rem));
    return borders;
}

std::vector<int> balanced_counts(int m, int P) {
    std::vector<int> q(P, m / P);
    for (int i = 0; i < m % P; ++i) ++q[i];
    return q;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

RunResult from_jagged(JaggedPartition jp) {
    RunResult r;
    r.partition = jp.expand();
    r.P_used = jp.P();
    r.variant_used = to_string(jp.orientation());
    return r;
}

/// jag-m-probe and jag-m-alloc need a stripe structure from the CLI: they
/// use uniform (area-balanced) stripes, and a balanced processor split when
/// --stripe-procs is not given.
RunResult run_stripe_based(const std::string &id, const PrefixSum2D &ps, const Params &p,
                           int P) {
    auto build = [&](Orientation o) {
        const int main_len = o == Orientation::kHor ? ps.n1() : ps.n2();
        if (P > main_len) throw InfeasibleError("stripe count exceeds main dimension");
        std::vector<int> borders = uniform_main_borders(main_len, P);
        if (id == "jag-m-probe") return jag_m_probe(ps, borders, p.m, o);
        std::vector<int> procs = p.stripe_procs.empty() ? balanced_counts(p.m, P)
                                                        : p.stripe_procs;
        if (static_cast<int>(procs.size()) != P)
            throw UsageError("stripe processor list length must equal P");
        int sum = 0;
        for (int q : procs) sum += q;
        if (sum != p.m) throw UsageError("stripe processor list must sum to m");
        return jag_m_alloc(ps, procs, o);
    };
    if (p.orientation != Orientation::kBest) return from_jagged(build(p.orientation));
    JaggedPartition hor = build(Orientation::kHor);
    JaggedPartition ver = build(Orientation::kVer);
    return from_jagged(ver.lmax < hor.lmax ? std::move(ver) : std::move(hor));
}

RunResult dispatch(const std::string &id, const PrefixSum2D &ps, const Params &p) {
    if (p.m < 1) throw UsageError("m must be at least 1");
    if (id == "rect-uniform" || id == "rect-nicol") {
        auto [P, Q] = resolve_pq(p);
        RectilinearPartition rp = id == "rect-uniform" ? rect_uniform(ps.n1(), ps.n2(), P, Q)
                                                       : rect_nicol(ps, P, Q);
        RunResult r;
        r.partition = rp.expand();
        r.P_used = P;
        r.Q_used = Q;
        return r;
    }
    if (id == "jag-pq-heur" || id == "jag-pq-opt-nicol" || id == "jag-pq-opt-dp") {
        auto [P, Q] = resolve_pq(p);
        JaggedPartition jp = id == "jag-pq-heur"
                                 ? jag_pq_heur(ps, P, Q, p.orientation)
                                 : (id == "jag-pq-opt-nicol"
                                        ? jag_pq_opt_nicol(ps, P, Q, p.orientation)
                                        : jag_pq_opt_dp(ps, P, Q, p.orientation));
        RunResult r = from_jagged(std::move(jp));
        r.Q_used = Q;
        return r;
    }
    if (id == "jag-m-heur") return from_jagged(jag_m_heur(ps, p.m, p.P, p.orientation));
    if (id == "jag-m-heur-probe")
        return from_jagged(jag_m_heur_probe(ps, p.m, p.P, p.orientation));
    if (id == "jag-m-opt") return from_jagged(jag_m_opt(ps, p.m, p.orientation));
    if (id == "jag-m-probe" || id == "jag-m-alloc") {
        int P = p.P;
        if (P == 0) P = default_stripe_count(p.m, std::min(ps.n1(), ps.n2()));
        if (P < 1 || P > p.m) throw UsageError("stripe count out of range");
        return run_stripe_based(id, ps, p, P);
    }
    if (id == "hier-rb" || id == "hier-relaxed" || id == "hier-opt") {
        BisectionTree t = id == "hier-rb"
                              ? hier_rb(ps, p.m, p.variant)
                              : (id == "hier-relaxed" ? hier_relaxed(ps, p.m, p.variant)
                                                      : hier_opt(ps, p.m));
        RunResult r;
        r.partition = t.expand();
        r.variant_used = id == "hier-opt" ? "" : to_string(p.variant);
        return r;
    }
    if (id == "hybrid") {
        HybridConfig cfg;
        cfg.phase1 = phase1_from_string(p.phase1);
        cfg.fast = phase2_from_string(p.phase2_fast);
        if (p.phase2_slow == "none")
            cfg.slow.reset();
        else
            cfg.slow = phase2_from_string(p.phase2_slow);
        cfg.orientation = p.orientation;
        cfg.min_P = p.min_P;
        RunResult r;
        if (p.P > 0) {
            cfg.P = p.P;
            HybridResult hr = hybrid_run(ps, p.m, cfg);
            r.partition = std::move(hr.partition);
            r.P_used = hr.P;
        } else {
            SweepResult sr = p_sweep(ps, p.m, cfg);
            r.partition = std::move(sr.run.partition);
            r.P_used = sr.chosen_P;
        }
        r.variant_used = to_string(cfg.orientation);
        return r;
    }
    throw UsageError("unknown algorithm: " + id);
}

}  // namespace

const std::vector<std::string> &algorithm_ids() {
    static const std::vector<std::string> ids = {
        "rect-uniform",  "rect-nicol",       "jag-pq-heur", "jag-pq-opt-nicol",
        "jag-pq-opt-dp", "jag-m-heur",       "jag-m-probe", "jag-m-alloc",
        "jag-m-heur-probe", "jag-m-opt",     "hier-rb",     "hier-relaxed",
        "hier-opt",      "hybrid",
    };
    return ids;
}

bool is_known_algorithm(const std::string &id) {
    for (const auto &s : algorithm_ids())
        if (s == id) return true;
    return false;
}

RunResult run_algorithm(const std::string &id, const PrefixSum2D &ps, const Params &params) {
    if (!is_known_algorithm(id)) throw UsageError("unknown algorithm: " + id);
    Timer timer;
    RunResult r = dispatch(id, ps, params);
    r.runtime_ms = timer.ms();
    return r;
}

}  // namespace rectpart::algos
