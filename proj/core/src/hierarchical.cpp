#include "rectpart/hierarchical.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "bitonic_search.hpp"

namespace rectpart {

namespace {

using detail::min_bitonic_max;
using u128 = unsigned __int128;
constexpr Load kInf = std::numeric_limits<Load>::max();

/// Per-processor load estimate of one side: load / procs, compared exactly.
struct Ratio {
    Load num = 0;
    int den = 1;
};
bool ratio_less(const Ratio &a, const Ratio &b) {
    return static_cast<u128>(a.num) * static_cast<unsigned>(b.den) <
           static_cast<u128>(b.num) * static_cast<unsigned>(a.den);
}
Ratio ratio_max(const Ratio &a, const Ratio &b) { return ratio_less(a, b) ? b : a; }

Rect left_part(const Rect &r, bool rows, int cut) {
    return rows ? Rect{r.x1, cut, r.y1, r.y2} : Rect{r.x1, r.x2, r.y1, cut};
}
Rect right_part(const Rect &r, bool rows, int cut) {
    return rows ? Rect{cut + 1, r.x2, r.y1, r.y2} : Rect{r.x1, r.x2, cut + 1, r.y2};
}

/// Feasible cut range along `rows` for a j | mj processor split: both
/// children must keep at least as many cells as processors.
bool cut_range(const Rect &r, bool rows, int j, int mj, int &clo, int &chi) {
    const long long across = rows ? r.width() : r.height();
    const int len = rows ? r.height() : r.width();
    if (len < 2) return false;
    const int lo0 = rows ? r.x1 : r.y1;
    long long rlo = (j + across - 1) / across;
    long long rhi = len - (mj + across - 1) / across;
    rlo = std::max<long long>(rlo, 1);
    rhi = std::min<long long>(rhi, len - 1);
    if (rlo > rhi) return false;
    clo = lo0 + static_cast<int>(rlo) - 1;
    chi = lo0 + static_cast<int>(rhi) - 1;
    return true;
}

struct AxisCut {
    bool ok = false;
    int cut = 0;
    Ratio value{0, 1};
};

/// Best cut along an axis for a fixed processor split, minimizing the larger
/// per-processor share of the two sides; smallest cut index on ties.
AxisCut best_cut(const PrefixSum2D &ps, const Rect &r, bool rows, int j, int mj) {
    int clo, chi;
    if (!cut_range(r, rows, j, mj, clo, chi)) return {};
    auto inc = [&](int c) {
        return static_cast<u128>(rect_load(ps, left_part(r, rows, c))) * static_cast<unsigned>(mj);
    };
    auto dec = [&](int c) {
        return static_cast<u128>(rect_load(ps, right_part(r, rows, c))) * static_cast<unsigned>(j);
    };
    const int c = min_bitonic_max<u128>(clo, chi, inc, dec).first;
    Ratio v = ratio_max(Ratio{rect_load(ps, left_part(r, rows, c)), j},
                        Ratio{rect_load(ps, right_part(r, rows, c)), mj});
    return {true, c, v};
}

/// Axis preference at a node: {primary, fallback} or both for kLoad.
struct AxisPlan {
    bool try_rows_first;
    bool compare_both;  // kLoad: evaluate both and keep the better
};

AxisPlan axis_plan(HierVariant variant, const Rect &r, int depth) {
    switch (variant) {
        case HierVariant::kLoad: return {true, true};
        case HierVariant::kDist: return {r.height() >= r.width(), false};
        case HierVariant::kHor: return {depth % 2 == 0, false};
        case HierVariant::kVer: return {depth % 2 == 1, false};
    }
    return {true, false};
}

struct NodeChoice {
    bool ok = false;
    bool rows = true;
    int cut = 0;
    int j = 0;
    Ratio value{0, 1};
};

/// Best (cut, j) on one axis over the candidate processor splits.
NodeChoice axis_choice(const PrefixSum2D &ps, const Rect &r, bool rows, int m,
                       const std::vector<int> &j_candidates) {
    NodeChoice best;
    for (int j : j_candidates) {
        AxisCut c = best_cut(ps, r, rows, j, m - j);
        if (!c.ok) continue;
        if (!best.ok || ratio_less(c.value, best.value)) best = {true, rows, c.cut, j, c.value};
    }
    return best;
}

NodeChoice pick_cut(const PrefixSum2D &ps, const Rect &r, int m, HierVariant variant, int depth,
                    const std::vector<int> &j_candidates) {
    const AxisPlan plan = axis_plan(variant, r, depth);
    if (plan.compare_both) {
        NodeChoice rows = axis_choice(ps, r, true, m, j_candidates);
        NodeChoice cols = axis_choice(ps, r, false, m, j_candidates);
        if (rows.ok && cols.ok) return ratio_less(cols.value, rows.value) ? cols : rows;
        return rows.ok ? rows : cols;
    }
    NodeChoice primary = axis_choice(ps, r, plan.try_rows_first, m, j_candidates);
    if (primary.ok) return primary;
    return axis_choice(ps, r, !plan.try_rows_first, m, j_candidates);
}

int build_nodes(const PrefixSum2D &ps, BisectionTree &tree, const Rect &r, int m, int depth,
                HierVariant variant, bool relaxed) {
    const int self = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(BisectionNode{r, m});
    if (m == 1) {
        tree.lmax = std::max(tree.lmax, rect_load(ps, r));
        return self;
    }
    std::vector<int> j_candidates;
    if (relaxed) {
        j_candidates.resize(m - 1);
        for (int j = 1; j < m; ++j) j_candidates[j - 1] = j;
    } else {
        j_candidates.push_back(m / 2);
        if (m % 2 != 0) j_candidates.push_back(m - m / 2);
    }
    NodeChoice choice = pick_cut(ps, r, m, variant, depth, j_candidates);
    if (!choice.ok)
        throw InfeasibleError("processor count exceeds the cells this rule can give a subregion");
    tree.nodes[self].cut_rows = choice.rows;
    tree.nodes[self].cut = choice.cut;
    const int li = build_nodes(ps, tree, left_part(r, choice.rows, choice.cut), choice.j,
                               depth + 1, variant, relaxed);
    tree.nodes[self].left = li;
    const int ri = build_nodes(ps, tree, right_part(r, choice.rows, choice.cut), m - choice.j,
                               depth + 1, variant, relaxed);
    tree.nodes[self].right = ri;
    return self;
}

BisectionTree build_tree(const PrefixSum2D &ps, const Rect &region, int m, HierVariant variant,
                         bool relaxed) {
    if (m < 1) throw Error("m must be at least 1");
    if (!region.inside(ps.n1(), ps.n2())) throw Error("region out of bounds");
    if (region.area() < static_cast<std::uint64_t>(m))
        throw InfeasibleError("m exceeds the cells of the region");
    BisectionTree tree{ps.n1(), ps.n2(), {}, 0};
    build_nodes(ps, tree, region, m, 0, variant, relaxed);
    return tree;
}

/// Exact optimizer. States are (rect, procs); values are exact max loads.
class HierOptSolver {
public:
    HierOptSolver(const PrefixSum2D &ps, std::size_t cap) : ps_(ps), cap_(cap) {}

    Load eval(const Rect &r, int q) {
        if (q == 1) return rect_load(ps_, r);
        if (r.area() < static_cast<std::uint64_t>(q)) return kInf;
        const std::uint64_t key = pack(r, q);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second.v;
        Entry best{kInf, true, 0, 0};
        for (int axis = 0; axis < 2; ++axis) {
            const bool rows = axis == 0;
            for (int j = 1; j < q; ++j) {
                int clo, chi;
                if (!cut_range(r, rows, j, q - j, clo, chi)) continue;
                auto inc = [&](int c) { return eval(left_part(r, rows, c), j); };
                auto dec = [&](int c) { return eval(right_part(r, rows, c), q - j); };
                auto [c, v] = min_bitonic_max<Load>(clo, chi, inc, dec);
                if (v < best.v) best = Entry{v, rows, c, j};
            }
        }
        if (memo_.size() >= cap_)
            throw ResourceError("hier_opt memo cap (" + std::to_string(cap_) + " states) exceeded");
        memo_.emplace(key, best);
        return best.v;
    }

    int rebuild(BisectionTree &tree, const Rect &r, int q) {
        const int self = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(BisectionNode{r, q});
        if (q == 1) return self;
        const Entry &e = memo_.at(pack(r, q));
        tree.nodes[self].cut_rows = e.rows;
        tree.nodes[self].cut = e.cut;
        const int li = rebuild(tree, left_part(r, e.rows, e.cut), e.j);
        tree.nodes[self].left = li;
        const int ri = rebuild(tree, right_part(r, e.rows, e.cut), q - e.j);
        tree.nodes[self].right = ri;
        return self;
    }

private:
    struct Entry {
        Load v;
        bool rows;
        int cut;
        int j;
    };

    static std::uint64_t pack(const Rect &r, int q) {
        std::uint64_t k = static_cast<std::uint64_t>(r.x1 - 1);
        k = k * 8192 + (r.x2 - 1);
        k = k * 8192 + (r.y1 - 1);
        k = k * 8192 + (r.y2 - 1);
        return k * 4096 + static_cast<std::uint64_t>(q - 1);
    }

    const PrefixSum2D &ps_;
    std::size_t cap_;
    std::unordered_map<std::uint64_t, Entry> memo_;
};

}  // namespace

const char *to_string(HierVariant v) {
    switch (v) {
        case HierVariant::kLoad: return "load";
        case HierVariant::kDist: return "dist";
        case HierVariant::kHor: return "hor";
        case HierVariant::kVer: return "ver";
    }
    return "?";
}

int BisectionTree::m() const { return nodes.empty() ? 0 : nodes.front().procs; }

Partition BisectionTree::expand() const {
    Partition part{n1, n2, {}};
    if (nodes.empty()) return part;
    // leaves left-to-right
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        const BisectionNode &node = nodes[i];
        if (node.left < 0) {
            part.rects.push_back(node.rect);
        } else {
            stack.push_back(node.right);
            stack.push_back(node.left);
        }
    }
    return part;
}

BisectionTree hier_rb(const PrefixSum2D &ps, int m, HierVariant variant) {
    return build_tree(ps, Rect{1, ps.n1(), 1, ps.n2()}, m, variant, false);
}
BisectionTree hier_rb(const PrefixSum2D &ps, const Rect &region, int m, HierVariant variant) {
    return build_tree(ps, region, m, variant, false);
}

BisectionTree hier_relaxed(const PrefixSum2D &ps, int m, HierVariant variant) {
    return build_tree(ps, Rect{1, ps.n1(), 1, ps.n2()}, m, variant, true);
}
BisectionTree hier_relaxed(const PrefixSum2D &ps, const Rect &region, int m,
                           HierVariant variant) {
    return build_tree(ps, region, m, variant, true);
}

BisectionTree hier_opt(const PrefixSum2D &ps, int m, HierOptOptions options) {
    return hier_opt(ps, Rect{1, ps.n1(), 1, ps.n2()}, m, options);
}

BisectionTree hier_opt(const PrefixSum2D &ps, const Rect &region, int m, HierOptOptions options) {
    if (m < 1) throw Error("m must be at least 1");
    if (ps.n1() > 8191 || ps.n2() > 8191)
        throw Error("hier_opt supports matrices up to 8191x8191");
    if (!region.inside(ps.n1(), ps.n2())) throw Error("region out of bounds");
    if (region.area() < static_cast<std::uint64_t>(m))
        throw InfeasibleError("m exceeds the cells of the region");
    if (m > 4096) throw ResourceError("hier_opt supports m up to 4096");
    HierOptSolver solver(ps, options.memo_cap);
    BisectionTree tree{ps.n1(), ps.n2(), {}, 0};
    tree.lmax = solver.eval(region, m);
    solver.rebuild(tree, region, m);
    return tree;
}

}  // namespace rectpart
