#include "rectpart/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace rectpart {

namespace {

using u128 = unsigned __int128;

bool ratio_greater(Load na, int da, Load nb, int db) {
    return static_cast<u128>(na) * static_cast<unsigned>(db) >
           static_cast<u128>(nb) * static_cast<unsigned>(da);
}

/// Phase-1 stripes of the m-way jagged heuristic, kept as full-width parts.
std::vector<Rect> stripes_as_parts(const PrefixSum2D &ps, int P, int m, Orientation o) {
    auto build = [&](const MatrixView &v) {
        oned::ProjectionWorkload proj(v.transposed_view(), 1, v.n2());
        oned::Cuts1D cuts = oned::canonicalize(oned::nicol_plus(proj, P));
        std::vector<Rect> parts;
        for (int k = 0; k < cuts.parts; ++k)
            parts.push_back(v.to_global(Rect{cuts.begin_of(k), cuts.end_of(k), 1, v.n2()}));
        return parts;
    };
    const MatrixView base(ps);
    if (o == Orientation::kHor) return build(base);
    if (o == Orientation::kVer) return build(base.transposed_view());
    // kBest: pick the orientation with the lower expected max load after
    // allocation (cheap; phase 2 only runs once), ties to kHor
    auto judge = [&](const std::vector<Rect> &parts) {
        std::vector<Load> loads;
        for (const Rect &r : parts) loads.push_back(rect_load(ps, r));
        return expected_max_load(loads, allocate_processors(loads, m));
    };
    std::optional<std::vector<Rect>> hor, ver;
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
    return judge(*ver) < judge(*hor) ? std::move(*ver) : std::move(*hor);
}

std::vector<Rect> run_phase1(const PrefixSum2D &ps, int P, int m, const HybridConfig &cfg) {
    switch (cfg.phase1) {
        case Phase1Algo::kHierRelaxed:
            return hier_relaxed(ps, P, HierVariant::kLoad).expand().rects;
        case Phase1Algo::kJagMHeurStripes:
            return stripes_as_parts(ps, P, m, cfg.orientation);
        case Phase1Algo::kJagMOpt:
            return jag_m_opt(ps, P, cfg.orientation).expand().rects;
    }
    throw Error("unknown phase 1 algorithm");
}

struct PartSolution {
    std::vector<Rect> rects;
    Load lmax = 0;
};

PartSolution run_phase2_any(const PrefixSum2D &ps, const Rect &part, int q, Phase2Algo algo,
                            Orientation o) {
    switch (algo) {
        case Phase2Algo::kHierRB: {
            BisectionTree t = hier_rb(ps, part, q, HierVariant::kLoad);
            return PartSolution{t.expand().rects, t.lmax};
        }
        case Phase2Algo::kHierRelaxed: {
            BisectionTree t = hier_relaxed(ps, part, q, HierVariant::kLoad);
            return PartSolution{t.expand().rects, t.lmax};
        }
        case Phase2Algo::kJagMHeur: {
            JaggedPartition jp = jag_m_heur(MatrixView(ps, part, false), q, 0, o);
            return PartSolution{jp.expand().rects, jp.lmax};
        }
        case Phase2Algo::kJagMHeurProbe: {
            JaggedPartition jp = jag_m_heur_probe(MatrixView(ps, part, false), q, 0, o);
            return PartSolution{jp.expand().rects, jp.lmax};
        }
        case Phase2Algo::kJagMOpt: {
            JaggedPartition jp = jag_m_opt(MatrixView(ps, part, false), q, o);
            return PartSolution{jp.expand().rects, jp.lmax};
        }
    }
    throw Error("unknown phase 2 algorithm");
}

}  // namespace

Allocation allocate_processors(const std::vector<Load> &part_loads, int m) {
    const int P = static_cast<int>(part_loads.size());
    if (P < 1) throw Error("at least one part required");
    if (m < P) throw InfeasibleError("fewer processors than parts");
    Load total = 0;
    for (Load l : part_loads) total += l;
    Allocation alloc;
    alloc.counts.assign(P, 0);
    int assigned = 0;
    for (int i = 0; i < P; ++i) {
        int c = 0;
        if (total > 0 && part_loads[i] > 0) {
            u128 num = static_cast<u128>(part_loads[i]) * static_cast<unsigned>(m - P);
            c = static_cast<int>((num + total - 1) / total);
        }
        c = std::max(c, 1);
        alloc.counts[i] = c;
        assigned += c;
    }
    for (int left = m - assigned; left > 0; --left) {
        int best = 0;
        for (int i = 1; i < P; ++i)
            if (ratio_greater(part_loads[i], alloc.counts[i], part_loads[best],
                              alloc.counts[best]))
                best = i;
        ++alloc.counts[best];
    }
    return alloc;
}

Rational expected_max_load(const std::vector<Load> &part_loads, const Allocation &alloc) {
    if (part_loads.size() != alloc.counts.size()) throw Error("inconsistent allocation");
    Load num = 0;
    int den = 1;
    for (std::size_t i = 0; i < part_loads.size(); ++i)
        if (ratio_greater(part_loads[i], alloc.counts[i], num, den)) {
            num = part_loads[i];
            den = alloc.counts[i];
        }
    return Rational(num, static_cast<Load>(den));
}

double expected_li(const std::vector<Load> &part_loads, const Allocation &alloc, int m) {
    Load total = 0;
    for (Load l : part_loads) total += l;
    if (total == 0) return 0.0;
    const Rational eml = expected_max_load(part_loads, alloc);
    const u128 num = static_cast<u128>(eml.num) * static_cast<unsigned>(m);
    const u128 den = static_cast<u128>(eml.den) * total;
    return static_cast<double>(num) / static_cast<double>(den) - 1.0;
}

HybridResult hybrid_run(const PrefixSum2D &ps, int m, const HybridConfig &cfg) {
    if (m < 1) throw Error("m must be at least 1");
    const int P = cfg.P > 0 ? cfg.P : 1;
    if (P > m) throw InfeasibleError("more parts than processors");

    HybridResult res;
    res.P = P;
    res.parts = run_phase1(ps, P, m, cfg);
    if (static_cast<int>(res.parts.size()) != P)
        throw Error("phase 1 did not produce the requested part count");

    std::vector<Load> loads;
    for (const Rect &r : res.parts) loads.push_back(rect_load(ps, r));
    res.alloc = allocate_processors(loads, m);

    std::vector<PartSolution> sols(P);
    for (int i = 0; i < P; ++i)
        sols[i] = run_phase2_any(ps, res.parts[i], res.alloc.counts[i], cfg.fast,
                                 cfg.orientation);

    auto global_lmax = [&] {
        Load v = 0;
        for (const auto &s : sols) v = std::max(v, s.lmax);
        return v;
    };
    res.lmax_trace.push_back(global_lmax());

    if (cfg.slow) {
        while (true) {
            int worst = 0;
            for (int i = 1; i < P; ++i)
                if (sols[i].lmax > sols[worst].lmax) worst = i;
            PartSolution retry = run_phase2_any(ps, res.parts[worst], res.alloc.counts[worst],
                                                *cfg.slow, cfg.orientation);
            if (retry.lmax >= sols[worst].lmax) break;
            sols[worst] = std::move(retry);
            ++res.slow_improvements;
            res.lmax_trace.push_back(global_lmax());
        }
    }

    res.partition.n1 = ps.n1();
    res.partition.n2 = ps.n2();
    for (const auto &s : sols)
        res.partition.rects.insert(res.partition.rects.end(), s.rects.begin(), s.rects.end());
    res.lmax = global_lmax();
    return res;
}

std::vector<int> sweep_candidates(int m, int min_P) {
    if (min_P < 2) throw Error("minimal P must be at least 2");
    const int top = m / 2;
    if (min_P > top)
        throw InfeasibleError("empty sweep candidate set: minimal P exceeds m/2");
    std::vector<int> out;
    auto wave = [&](int P) { return (m - P + P - 1) / P; };  // ceil((m-P)/P)
    for (int P = min_P; P <= top; ++P)
        if (P == top || wave(P) != wave(P + 1)) out.push_back(P);
    return out;
}

SweepResult p_sweep(const PrefixSum2D &ps, int m, const HybridConfig &cfg) {
    int min_P = cfg.min_P;
    if (min_P == 0)
        min_P = std::max(2, static_cast<int>(std::llround(std::sqrt(static_cast<double>(m)))));
    SweepResult res;
    const std::vector<int> cands = sweep_candidates(m, min_P);
    int best_P = 0;
    Rational best_eml;
    for (int P : cands) {
        std::vector<Rect> parts = run_phase1(ps, P, m, cfg);
        std::vector<Load> loads;
        for (const Rect &r : parts) loads.push_back(rect_load(ps, r));
        Allocation alloc = allocate_processors(loads, m);
        Rational eml = expected_max_load(loads, alloc);
        res.candidates.push_back(SweepCandidate{P, eml, expected_li(loads, alloc, m)});
        if (best_P == 0 || eml < best_eml) {
            best_P = P;
            best_eml = eml;
        }
    }
    res.chosen_P = best_P;
    HybridConfig run_cfg = cfg;
    run_cfg.P = best_P;
    res.run = hybrid_run(ps, m, run_cfg);
    return res;
}

const char *to_string(Phase1Algo a) {
    switch (a) {
        case Phase1Algo::kHierRelaxed: return "hier-relaxed";
        case Phase1Algo::kJagMHeurStripes: return "jag-m-stripes";
        case Phase1Algo::kJagMOpt: return "jag-m-opt";
    }
    return "?";
}

const char *to_string(Phase2Algo a) {
    switch (a) {
        case Phase2Algo::kJagMHeur: return "jag-m-heur";
        case Phase2Algo::kJagMHeurProbe: return "jag-m-heur-probe";
        case Phase2Algo::kJagMOpt: return "jag-m-opt";
        case Phase2Algo::kHierRB: return "hier-rb";
        case Phase2Algo::kHierRelaxed: return "hier-relaxed";
    }
    return "?";
}

Phase1Algo phase1_from_string(const std::string &s) {
    if (s == "hier-relaxed") return Phase1Algo::kHierRelaxed;
    if (s == "jag-m-stripes") return Phase1Algo::kJagMHeurStripes;
    if (s == "jag-m-opt") return Phase1Algo::kJagMOpt;
    throw Error("unknown phase 1 algorithm: " + s);
}

Phase2Algo phase2_from_string(const std::string &s) {
    if (s == "jag-m-heur") return Phase2Algo::kJagMHeur;
    if (s == "jag-m-heur-probe") return Phase2Algo::kJagMHeurProbe;
    if (s == "jag-m-opt") return Phase2Algo::kJagMOpt;
    if (s == "hier-rb") return Phase2Algo::kHierRB;
    if (s == "hier-relaxed") return Phase2Algo::kHierRelaxed;
    throw Error("unknown phase 2 algorithm: " + s);
}

}  // namespace rectpart
