#include "rectpart/oned.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "bitonic_search.hpp"

namespace rectpart::oned {

namespace {

using detail::min_bitonic_max;
using u128 = unsigned __int128;
constexpr Load kInf = std::numeric_limits<Load>::max();

/// Largest e in [elo, ehi] with load(s, e) <= target; load(s, elo) <= target required.
int greedy_step_plain(const Workload &w, int s, Load target, int elo, int ehi) {
    int a = elo, b = ehi;
    while (a < b) {
        int mid = a + (b - a + 1) / 2;
        if (w.load(s, mid) <= target)
            a = mid;
        else
            b = mid - 1;
    }
    return a;
}

/**
 * Prefix-inversion cut search for additive workloads. The array is viewed in
 * chunks; a cursor advances monotonically over chunk ends (amortized O(1))
 * and a binary search inside the final chunk pins the cut, so one greedy
 * step costs O(log chunk) instead of O(log n).
 */
struct SlicedScanner {
    const Workload &w;
    int n;
    int chunk;
    int cursor = 0;

    int step(int s, Load target) {
        const Load base = w.load(1, s - 1);
        const Load limit = (target > kInf - base) ? kInf : base + target;
        if (cursor < s - 1) cursor = s - 1;
        while (cursor < n) {
            int nxt = std::min(n, cursor + chunk);
            if (w.load(1, nxt) <= limit)
                cursor = nxt;
            else
                break;
        }
        int a = cursor, b = std::min(n, cursor + chunk);
        while (a < b) {
            int mid = a + (b - a + 1) / 2;
            if (w.load(1, mid) <= limit)
                a = mid;
            else
                b = mid - 1;
        }
        cursor = a;
        return a;
    }
};

bool want_sliced(const Workload &w, int parts, SearchPath path) {
    if (!w.additive()) return false;
    if (path == SearchPath::kSliced) return true;
    return path == SearchPath::kAuto && w.size() >= 4 * parts && w.size() >= 64;
}

/// Probe with optional per-cut index windows (windows imply a plain search).
ProbeResult probe_impl(const Workload &w, int parts, Load target, SearchPath path,
                       const int *wlo, const int *whi) {
    const int n = w.size();
    ProbeResult res;
    res.cuts.n = n;
    res.cuts.parts = parts;
    res.cuts.borders.assign(parts > 0 ? parts - 1 : 0, 0);
    const bool sliced = !wlo && want_sliced(w, parts, path);
    SlicedScanner scanner{w, n, std::max(1, (n + std::max(parts, 1) - 1) / std::max(parts, 1))};

    int s = 1;
    bool stalled = false;
    for (int k = 0; k + 1 < parts; ++k) {
        if (s > n) {
            res.cuts.borders[k] = n;
            continue;
        }
        int e;
        if (wlo) {
            int elo = std::max(s - 1, wlo[k]);
            int ehi = std::max(elo, std::min(n, whi[k]));
            e = greedy_step_plain(w, s, target, elo, ehi);
        } else if (sliced) {
            e = scanner.step(s, target);
        } else {
            e = greedy_step_plain(w, s, target, s - 1, n);
        }
        res.cuts.borders[k] = e;
        if (e >= s) res.max_load = std::max(res.max_load, w.load(s, e));
        if (e < s) {  // task s alone exceeds the target
            for (int k2 = k + 1; k2 + 1 < parts; ++k2) res.cuts.borders[k2] = e;
            stalled = true;
            break;
        }
        s = e + 1;
    }
    if (!stalled && s <= n) {
        Load rest = w.load(s, n);
        if (rest <= target) {
            res.max_load = std::max(res.max_load, rest);
            s = n + 1;
        }
    }
    res.feasible = !stalled && s > n;
    return res;
}

}  // namespace

ArrayWorkload::ArrayWorkload(const std::vector<Load> &tasks) : max_task_(0) {
    prefix_.resize(tasks.size() + 1);
    prefix_[0] = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i] > kInf - prefix_[i]) throw Error("workload total overflows");
        prefix_[i + 1] = prefix_[i] + tasks[i];
        max_task_ = std::max(max_task_, tasks[i]);
    }
}

ProjectionWorkload::ProjectionWorkload(const MatrixView &view, int rowlo, int rowhi)
    : view_(view), rowlo_(rowlo), rowhi_(rowhi), max_task_(0) {
    if (rowlo < 1 || rowlo > rowhi || rowhi > view.n1())
        throw Error("bad stripe range for projection workload");
    for (int y = 1; y <= view_.n2(); ++y)
        max_task_ = std::max(max_task_, view_.load(rowlo_, rowhi_, y, y));
}

ProjectionWorkload workload_from_columns(const PrefixSum2D &ps, int rowlo, int rowhi) {
    return ProjectionWorkload(MatrixView(ps), rowlo, rowhi);
}

ProjectionWorkload workload_from_rows(const PrefixSum2D &ps, int collo, int colhi) {
    return ProjectionWorkload(MatrixView(ps).transposed_view(), collo, colhi);
}

std::vector<Load> interval_loads(const Workload &w, const Cuts1D &cuts) {
    std::vector<Load> out(cuts.parts);
    for (int k = 0; k < cuts.parts; ++k) out[k] = w.load(cuts.begin_of(k), cuts.end_of(k));
    return out;
}

Load max_interval_load(const Workload &w, const Cuts1D &cuts) {
    Load best = 0;
    for (int k = 0; k < cuts.parts; ++k)
        best = std::max(best, w.load(cuts.begin_of(k), cuts.end_of(k)));
    return best;
}

Cuts1D canonicalize(const Cuts1D &cuts) {
    const int n = cuts.n, parts = cuts.parts;
    if (parts > n)
        throw InfeasibleError("parts (" + std::to_string(parts) + ") exceed cells (" +
                              std::to_string(n) + ")");
    Cuts1D out = cuts;
    int prev = 0;
    for (int k = 0; k + 1 < parts; ++k) {
        int b = std::max(out.borders[k], prev + 1);
        b = std::min(b, n - (parts - 1 - k));
        out.borders[k] = b;
        prev = b;
    }
    return out;
}

Cuts1D direct_cut(const Workload &w, int parts) {
    if (parts < 1) throw Error("parts must be at least 1");
    const int n = w.size();
    Cuts1D cuts{n, parts, {}};
    cuts.borders.reserve(parts - 1);
    const Load total = w.total();
    int b = 0;
    for (int k = 1; k < parts; ++k) {
        const u128 threshold = static_cast<u128>(total) * static_cast<unsigned>(k);
        int a = b, c = n;
        while (a < c) {
            int mid = a + (c - a) / 2;
            if (static_cast<u128>(w.load(1, mid)) * static_cast<unsigned>(parts) >= threshold)
                c = mid;
            else
                a = mid + 1;
        }
        b = a;
        cuts.borders.push_back(b);
    }
    return cuts;
}

namespace {

void rb_recurse(const Workload &w, int lo, int hi, int parts, std::vector<int> &borders) {
    if (parts == 1) return;
    const int jl = parts / 2, jr = parts - jl;
    auto inc = [&](int c) { return static_cast<u128>(w.load(lo, c)) * static_cast<unsigned>(jr); };
    auto dec = [&](int c) {
        return static_cast<u128>(w.load(c + 1, hi)) * static_cast<unsigned>(jl);
    };
    const int c = min_bitonic_max<u128>(lo - 1, hi, inc, dec).first;
    rb_recurse(w, lo, c, jl, borders);
    borders.push_back(c);
    rb_recurse(w, c + 1, hi, jr, borders);
}

}  // namespace

Cuts1D recursive_bisection_1d(const Workload &w, int parts) {
    if (parts < 1) throw Error("parts must be at least 1");
    Cuts1D cuts{w.size(), parts, {}};
    cuts.borders.reserve(parts - 1);
    rb_recurse(w, 1, w.size(), parts, cuts.borders);
    return cuts;
}

Cuts1D dp_optimal_1d(const Workload &w, int parts) {
    if (parts < 1) throw Error("parts must be at least 1");
    const int n = w.size();
    if (parts == 1) return Cuts1D{n, 1, {}};
    std::vector<std::vector<Load>> D(parts + 1, std::vector<Load>(n + 1, 0));
    for (int i = 0; i <= n; ++i) D[1][i] = w.load(1, i);
    for (int p = 2; p <= parts; ++p) {
        for (int i = 0; i <= n; ++i) {
            auto inc = [&](int k) { return D[p - 1][k]; };
            auto dec = [&](int k) { return w.load(k + 1, i); };
            D[p][i] = min_bitonic_max<Load>(0, i, inc, dec).second;
        }
    }
    Cuts1D cuts{n, parts, std::vector<int>(parts - 1, 0)};
    int i = n;
    for (int p = parts; p >= 2; --p) {
        auto inc = [&](int k) { return D[p - 1][k]; };
        auto dec = [&](int k) { return w.load(k + 1, i); };
        const int k = min_bitonic_max<Load>(0, i, inc, dec).first;
        cuts.borders[p - 2] = k;
        i = k;
    }
    return cuts;
}

ProbeResult probe(const Workload &w, int parts, Load target, SearchPath path) {
    if (parts < 1) throw Error("parts must be at least 1");
    return probe_impl(w, parts, target, path, nullptr, nullptr);
}

Cuts1D nicol_plus(const Workload &w, int parts, Load feasible_hint) {
    if (parts < 1) throw Error("parts must be at least 1");
    const int n = w.size();
    if (parts == 1 || n == 0) return Cuts1D{n, parts, std::vector<int>(parts > 0 ? parts - 1 : 0, n)};
    const Load total = w.total();
    if (total == 0) return probe(w, parts, 0).cuts;

    const Load avg_lb =
        w.total_split_bounded() ? ceil_div(total, static_cast<Load>(parts)) : 0;
    Load bracket_lo = std::max(avg_lb, w.max_task());
    Load bracket_hi = max_interval_load(w, direct_cut(w, parts));
    if (feasible_hint > 0 && feasible_hint < bracket_hi)
        bracket_hi = std::max(feasible_hint, bracket_lo);

    std::vector<int> wlo(parts - 1, 0), whi(parts - 1, n);
    auto run_probe = [&](Load target) -> bool {
        ProbeResult pr = probe_impl(w, parts, target, SearchPath::kAuto, wlo.data(), whi.data());
        if (pr.feasible) {
            bracket_hi = std::min(bracket_hi, std::max(pr.max_load, bracket_lo));
            for (int k = 0; k + 1 < parts; ++k) whi[k] = std::min(whi[k], pr.cuts.borders[k]);
        } else {
            bracket_lo = std::max(bracket_lo, target + 1);
            for (int k = 0; k + 1 < parts; ++k) wlo[k] = std::max(wlo[k], pr.cuts.borders[k]);
        }
        return pr.feasible;
    };
    auto verdict = [&](Load target) -> bool {
        if (target < bracket_lo) return false;
        if (target >= bracket_hi) return true;
        return run_probe(target);
    };

    if (bracket_hi > bracket_lo) {
        run_probe(bracket_hi);
        if (bracket_hi > bracket_lo && bracket_lo > 0) run_probe(bracket_lo - 1);
    }

    Load best = bracket_hi;
    int s = 1;
    for (int slot = 0; slot + 1 < parts && s <= n; ++slot) {
        if (bracket_lo >= bracket_hi) break;
        int jlo = std::max(s - 1, wlo[slot] + 1);
        int jhi = std::min(n, whi[slot] + 1);
        if (jhi < jlo) jhi = jlo;
        int a = jlo, b = jhi;
        while (a < b) {
            int mid = a + (b - a) / 2;
            if (verdict(w.load(s, mid)))
                b = mid;
            else
                a = mid + 1;
        }
        const Load cand = w.load(s, a);
        best = std::min(best, cand);
        bracket_hi = std::min(bracket_hi, cand);
        if (a >= s) s = a;  // slot holds [s, a-1]; empty when a == s-1 (all-zero tail)
        else break;
    }
    if (s <= n) best = std::min(best, w.load(s, n));
    best = std::min(best, bracket_hi);
    ProbeResult fin = probe(w, parts, best);
    assert(fin.feasible);
    return fin.cuts;
}

namespace {

struct MultiScanOutcome {
    bool feasible = false;
    std::vector<int> slot_cuts;  // concatenated coordinates, one per slot
    Load max_load = 0;
};

/// Slot-ordered greedy over all arrays with per-slot windows in concatenated
/// coordinates; used only for bracket-interior targets inside the multi scan.
MultiScanOutcome probe_multi_windowed(std::span<const Workload *const> arrays,
                                      const std::vector<int> &offsets, int total_len,
                                      int parts, Load target, const std::vector<int> &wlo,
                                      const std::vector<int> &whi) {
    const int P = static_cast<int>(arrays.size());
    MultiScanOutcome out;
    out.slot_cuts.assign(parts > 0 ? parts - 1 : 0, 0);
    int a = 0, s = 1;
    bool stalled = false;
    for (int k = 0; k + 1 < parts; ++k) {
        if (a >= P) {
            out.slot_cuts[k] = total_len;
            continue;
        }
        const Workload &w = *arrays[a];
        const int n = w.size();
        const int off = offsets[a];
        int elo = std::max(s - 1, wlo[k] - off);
        int ehi = std::max(elo, std::min(n, whi[k] - off));
        const int e = greedy_step_plain(w, s, target, elo, ehi);
        out.slot_cuts[k] = off + e;
        if (e >= s) out.max_load = std::max(out.max_load, w.load(s, e));
        if (e < s) {
            for (int k2 = k + 1; k2 + 1 < parts; ++k2) out.slot_cuts[k2] = off + e;
            stalled = true;
            break;
        }
        if (e == n) {
            ++a;
            s = 1;
        } else {
            s = e + 1;
        }
    }
    if (!stalled) {
        if (a >= P) {
            out.feasible = true;
        } else if (a == P - 1) {
            Load rest = arrays[a]->load(s, arrays[a]->size());
            if (rest <= target) {
                out.max_load = std::max(out.max_load, rest);
                out.feasible = true;
            }
        }
    }
    return out;
}

Load multi_lower_bound(std::span<const Workload *const> arrays, int parts, Load total) {
    bool split_bounded = true;
    for (const Workload *w : arrays) split_bounded = split_bounded && w->total_split_bounded();
    Load lb = (total == 0 || !split_bounded) ? 0 : ceil_div(total, static_cast<Load>(parts));
    for (const Workload *w : arrays) lb = std::max(lb, w->max_task());
    return lb;
}

Load multi_cheap_feasible(std::span<const Workload *const> arrays) {
    Load hi = 0;
    for (const Workload *w : arrays) hi = std::max(hi, w->total());
    return hi;  // one interval per array
}

void check_multi_args(std::span<const Workload *const> arrays, int parts) {
    if (arrays.empty()) throw Error("at least one array required");
    if (parts < static_cast<int>(arrays.size()))
        throw InfeasibleError("fewer processors (" + std::to_string(parts) + ") than arrays (" +
                              std::to_string(arrays.size()) + ")");
}

}  // namespace

ProbeMultiResult probe_multi(std::span<const Workload *const> arrays, int parts, Load target,
                             SearchPath path) {
    if (parts < 1) throw Error("parts must be at least 1");
    if (arrays.empty()) throw Error("at least one array required");
    const int P = static_cast<int>(arrays.size());
    ProbeMultiResult res;
    res.cuts.per_array.resize(P);
    int used = 0;
    bool stalled = false;
    for (int a = 0; a < P && !stalled; ++a) {
        const Workload &w = *arrays[a];
        const int n = w.size();
        auto &c = res.cuts.per_array[a];
        c.n = n;
        const int chunk =
            std::max(1, static_cast<int>((static_cast<long long>(n) * P + parts - 1) / parts));
        const bool sliced = want_sliced(w, std::max(1, parts / P), path);
        SlicedScanner scanner{w, n, chunk};
        int s = 1;
        std::vector<int> ends;
        while (s <= n) {
            int e = sliced ? scanner.step(s, target)
                           : greedy_step_plain(w, s, target, s - 1, n);
            if (e < s) {
                stalled = true;
                break;
            }
            res.max_load = std::max(res.max_load, w.load(s, e));
            ends.push_back(e);
            s = e + 1;
        }
        c.parts = std::max<std::size_t>(1, ends.size());
        if (!ends.empty()) c.borders.assign(ends.begin(), ends.end() - 1);
        used += static_cast<int>(ends.size());
    }
    res.feasible = !stalled && used <= parts;
    if (res.feasible) {
        auto &last = res.cuts.per_array.back();
        for (int i = used; i < parts; ++i) {
            last.borders.push_back(last.n);
            ++last.parts;
        }
    }
    return res;
}

MultiCuts nicol_plus_multi(std::span<const Workload *const> arrays, int parts,
                           Load feasible_hint) {
    check_multi_args(arrays, parts);
    const int P = static_cast<int>(arrays.size());
    std::vector<int> offsets(P);
    int total_len = 0;
    Load total = 0;
    for (int a = 0; a < P; ++a) {
        offsets[a] = total_len;
        total_len += arrays[a]->size();
        total += arrays[a]->total();
    }
    if (total == 0) return probe_multi(arrays, parts, 0).cuts;

    Load bracket_lo = multi_lower_bound(arrays, parts, total);
    Load bracket_hi = multi_cheap_feasible(arrays);
    if (feasible_hint > 0 && feasible_hint < bracket_hi)
        bracket_hi = std::max(feasible_hint, bracket_lo);

    std::vector<int> wlo(parts > 0 ? parts - 1 : 0, 0), whi(parts > 0 ? parts - 1 : 0, total_len);
    auto run_probe = [&](Load target) -> bool {
        MultiScanOutcome pr =
            probe_multi_windowed(arrays, offsets, total_len, parts, target, wlo, whi);
        if (pr.feasible) {
            bracket_hi = std::min(bracket_hi, std::max(pr.max_load, bracket_lo));
            for (int k = 0; k + 1 < parts; ++k) whi[k] = std::min(whi[k], pr.slot_cuts[k]);
        } else {
            bracket_lo = std::max(bracket_lo, target + 1);
            for (int k = 0; k + 1 < parts; ++k) wlo[k] = std::max(wlo[k], pr.slot_cuts[k]);
        }
        return pr.feasible;
    };
    auto verdict = [&](Load target) -> bool {
        if (target < bracket_lo) return false;
        if (target >= bracket_hi) return true;
        return run_probe(target);
    };

    if (bracket_hi > bracket_lo) {
        run_probe(bracket_hi);
        if (bracket_hi > bracket_lo && bracket_lo > 0) run_probe(bracket_lo - 1);
    }

    Load best = bracket_hi;
    int a = 0, s = 1;
    for (int slot = 0; slot + 1 < parts && a < P; ++slot) {
        if (bracket_lo >= bracket_hi) break;
        const Workload &w = *arrays[a];
        const int n = w.size();
        const int off = offsets[a];
        if (!verdict(w.load(s, n))) {
            // no realizable candidate starts in this array's remainder
            ++a;
            s = 1;
            continue;
        }
        int jlo = std::max(s - 1, wlo[slot] + 1 - off);
        int jhi = std::min(n, whi[slot] + 1 - off);
        if (jhi < jlo) jhi = jlo;
        int lo = jlo, hi = jhi;
        while (lo < hi) {
            int mid = lo + (hi - lo) / 2;
            if (verdict(w.load(s, mid)))
                hi = mid;
            else
                lo = mid + 1;
        }
        const Load cand = w.load(s, lo);
        best = std::min(best, cand);
        bracket_hi = std::min(bracket_hi, cand);
        if (lo >= s) s = lo;  // slot holds [s, lo-1]
        else break;           // zero-load candidate: bracket collapses next round
    }
    if (a == P - 1 && s <= arrays[a]->size())
        best = std::min(best, arrays[a]->load(s, arrays[a]->size()));
    best = std::min(best, bracket_hi);
    ProbeMultiResult fin = probe_multi(arrays, parts, best);
    assert(fin.feasible);
    return fin.cuts;
}

MultiCuts target_bisection_multi(std::span<const Workload *const> arrays, int parts,
                                 Load feasible_hint) {
    check_multi_args(arrays, parts);
    Load total = 0;
    for (const Workload *w : arrays) total += w->total();
    if (total == 0) return probe_multi(arrays, parts, 0).cuts;
    Load lo = multi_lower_bound(arrays, parts, total);
    Load hi = multi_cheap_feasible(arrays);
    if (feasible_hint > 0 && feasible_hint < hi) hi = std::max(feasible_hint, lo);
    while (lo < hi) {
        Load mid = lo + (hi - lo) / 2;
        if (probe_multi(arrays, parts, mid).feasible)
            hi = mid;
        else
            lo = mid + 1;
    }
    ProbeMultiResult fin = probe_multi(arrays, parts, lo);
    assert(fin.feasible);
    return fin.cuts;
}

Cuts1D dp_optimal_parts(const PartLoadFn &fn, int n, int parts) {
    if (parts < 1) throw Error("parts must be at least 1");
    if (parts > n)
        throw InfeasibleError("parts (" + std::to_string(parts) + ") exceed tasks (" +
                              std::to_string(n) + ")");
    if (parts == 1) return Cuts1D{n, 1, {}};
    std::vector<std::vector<Load>> D(parts + 1, std::vector<Load>(n + 1, kInf));
    std::vector<std::vector<int>> choice(parts + 1, std::vector<int>(n + 1, -1));
    for (int r = 1; r <= n; ++r) D[1][r] = fn(0, 1, r);
    for (int p = 2; p <= parts; ++p) {
        for (int r = p; r <= n; ++r) {
            Load best = kInf;
            int bk = -1;
            for (int k = p - 1; k < r; ++k) {
                const Load left = D[p - 1][k];
                if (left >= best) continue;  // max(left, .) cannot improve
                const Load right = fn(p - 1, k + 1, r);
                const Load v = std::max(left, right);
                if (v < best) {
                    best = v;
                    bk = k;
                }
            }
            D[p][r] = best;
            choice[p][r] = bk;
        }
    }
    Cuts1D cuts{n, parts, std::vector<int>(parts - 1, 0)};
    int r = n;
    for (int p = parts; p >= 2; --p) {
        const int k = choice[p][r];
        cuts.borders[p - 2] = k;
        r = k;
    }
    return cuts;
}

}  // namespace rectpart::oned
