#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "rectpart/instances.hpp"

namespace oracle {

namespace {
constexpr Load kInf = std::numeric_limits<Load>::max();
}

Load naive_rect_sum(const Mat &m, int x1, int x2, int y1, int y2) {
    Load s = 0;
    for (int x = x1; x <= x2; ++x)
        for (int y = y1; y <= y2; ++y) s += m[x - 1][y - 1];
    return s;
}

Load naive_total(const Mat &m) {
    return naive_rect_sum(m, 1, static_cast<int>(m.size()), 1,
                          static_cast<int>(m.front().size()));
}

Mat transpose(const Mat &m) {
    Mat t(m.front().size(), std::vector<Load>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.front().size(); ++j) t[j][i] = m[i][j];
    return t;
}

std::vector<Load> col_sums(const Mat &m, int rowlo, int rowhi) {
    std::vector<Load> out(m.front().size(), 0);
    for (int x = rowlo; x <= rowhi; ++x)
        for (std::size_t y = 0; y < out.size(); ++y) out[y] += m[x - 1][y];
    return out;
}

std::vector<Load> row_projection(const Mat &m) {
    std::vector<Load> out;
    for (const auto &row : m) {
        Load s = 0;
        for (Load v : row) s += v;
        out.push_back(s);
    }
    return out;
}

Load best_1d(const std::vector<Load> &tasks, int parts) {
    const int n = static_cast<int>(tasks.size());
    std::function<Load(int, int)> rec = [&](int start, int p) -> Load {
        if (p == 1) {
            Load s = 0;
            for (int i = start; i <= n; ++i) s += tasks[i - 1];
            return s;
        }
        Load best = kInf;
        Load left = 0;
        for (int e = start - 1; e <= n; ++e) {
            if (e >= start) left += tasks[e - 1];
            best = std::min(best, std::max(left, rec(e + 1, p - 1)));
        }
        return best;
    };
    return rec(1, parts);
}

Load best_multi(const std::vector<std::vector<Load>> &arrays, int parts) {
    const int A = static_cast<int>(arrays.size());
    Load best = kInf;
    std::vector<int> q(A, 1);
    std::function<void(int, int)> rec = [&](int a, int left) {
        if (a == A - 1) {
            q[a] = left;
            Load v = 0;
            for (int i = 0; i < A; ++i) v = std::max(v, best_1d(arrays[i], q[i]));
            best = std::min(best, v);
            return;
        }
        for (int give = 1; give <= left - (A - 1 - a); ++give) {
            q[a] = give;
            rec(a + 1, left - give);
        }
    };
    if (parts >= A) rec(0, parts);
    return best;
}

Load best_parts(const std::vector<std::vector<std::vector<Load>>> &cost, int n, int parts) {
    std::function<Load(int, int)> rec = [&](int start, int idx) -> Load {
        const int left = parts - idx;  // intervals still to place
        if (left == 1) return cost[idx][start - 1][n - 1];
        Load best = kInf;
        for (int e = start; e <= n - left + 1; ++e)
            best = std::min(best, std::max(cost[idx][start - 1][e - 1], rec(e + 1, idx + 1)));
        return best;
    };
    if (parts > n) return kInf;
    return rec(1, 0);
}

namespace {

/// Enumerates splits of rows [1, n1] into `stripes` non-empty stripes and
/// folds fn(stripe_index, rowlo, rowhi) -> Load with max, minimizing overall.
Load enumerate_stripes(int n1, int stripes,
                       const std::function<Load(int, int, int)> &stripe_cost) {
    std::function<Load(int, int, int)> rec = [&](int start, int idx, int left) -> Load {
        if (left == 1) return stripe_cost(idx, start, n1);
        Load best = kInf;
        for (int e = start; e <= n1 - left + 1; ++e) {
            Load here = stripe_cost(idx, start, e);
            Load rest = rec(e + 1, idx + 1, left - 1);
            best = std::min(best, std::max(here, rest));
        }
        return best;
    };
    if (stripes > n1) return kInf;
    return rec(1, 0, stripes);
}

}  // namespace

Load best_pq_jagged_rows(const Mat &m, int P, int Q) {
    return enumerate_stripes(static_cast<int>(m.size()), P, [&](int, int lo, int hi) {
        return best_1d(col_sums(m, lo, hi), Q);
    });
}

Load best_m_jagged_rows(const Mat &m, int procs) {
    const int n1 = static_cast<int>(m.size());
    const int n2 = static_cast<int>(m.front().size());
    Load best = kInf;
    // choose stripe count P, then distribute processors (1..n2 per stripe)
    for (int P = 1; P <= std::min(n1, procs); ++P) {
        std::vector<int> alloc(P);
        std::function<Load(int, int, int)> rec = [&](int start, int idx, int left) -> Load {
            const int stripes_left = P - idx;
            if (stripes_left == 1) {
                if (left < 1 || left > n2) return kInf;
                return best_1d(col_sums(m, start, n1), left);
            }
            Load bst = kInf;
            for (int e = start; e <= n1 - stripes_left + 1; ++e) {
                for (int x = 1; x <= std::min(left - (stripes_left - 1), n2); ++x) {
                    Load here = best_1d(col_sums(m, start, e), x);
                    Load rest = rec(e + 1, idx + 1, left - x);
                    bst = std::min(bst, std::max(here, rest));
                }
            }
            return bst;
        };
        best = std::min(best, rec(1, 0, procs));
    }
    return best;
}

Load best_hier(const Mat &m, int procs) {
    std::function<Load(int, int, int, int, int)> rec = [&](int x1, int x2, int y1, int y2,
                                                           int q) -> Load {
        if (q == 1) return naive_rect_sum(m, x1, x2, y1, y2);
        const std::uint64_t area =
            static_cast<std::uint64_t>(x2 - x1 + 1) * static_cast<std::uint64_t>(y2 - y1 + 1);
        if (area < static_cast<std::uint64_t>(q)) return kInf;
        Load best = kInf;
        for (int j = 1; j < q; ++j) {
            for (int c = x1; c < x2; ++c)
                best = std::min(best, std::max(rec(x1, c, y1, y2, j), rec(c + 1, x2, y1, y2, q - j)));
            for (int c = y1; c < y2; ++c)
                best = std::min(best, std::max(rec(x1, x2, y1, c, j), rec(x1, x2, c + 1, y2, q - j)));
        }
        return best;
    };
    return rec(1, static_cast<int>(m.size()), 1, static_cast<int>(m.front().size()), procs);
}

Load best_rectilinear(const Mat &m, int P, int Q) {
    const int n1 = static_cast<int>(m.size()), n2 = static_cast<int>(m.front().size());
    std::vector<int> rows, cols;
    Load best = kInf;
    std::function<void(int, int)> pick_cols = [&](int start, int left) {
        if (left == 0) {
            // evaluate the grid
            Load v = 0;
            std::vector<int> rb = rows;
            rb.push_back(n1);
            std::vector<int> cb = cols;
            cb.push_back(n2);
            int rp = 0;
            for (int r : rb) {
                int cp = 0;
                for (int c : cb) {
                    v = std::max(v, naive_rect_sum(m, rp + 1, r, cp + 1, c));
                    cp = c;
                }
                rp = r;
            }
            best = std::min(best, v);
            return;
        }
        for (int c = start; c <= n2 - left; ++c) {
            cols.push_back(c);
            pick_cols(c + 1, left - 1);
            cols.pop_back();
        }
    };
    std::function<void(int, int)> pick_rows = [&](int start, int left) {
        if (left == 0) {
            pick_cols(1, Q - 1);
            return;
        }
        for (int r = start; r <= n1 - left; ++r) {
            rows.push_back(r);
            pick_rows(r + 1, left - 1);
            rows.pop_back();
        }
    };
    pick_rows(1, P - 1);
    return best;
}

bool naive_valid(const rectpart::Partition &p) {
    std::vector<int> owners(static_cast<std::size_t>(p.n1) * p.n2, 0);
    for (const auto &r : p.rects) {
        if (!r.inside(p.n1, p.n2)) return false;
        for (int x = r.x1; x <= r.x2; ++x)
            for (int y = r.y1; y <= r.y2; ++y)
                ++owners[static_cast<std::size_t>(x - 1) * p.n2 + (y - 1)];
    }
    for (int c : owners)
        if (c != 1) return false;
    return true;
}

Mat random_matrix(std::mt19937_64 &rng, int n1, int n2, Load maxval) {
    Mat m(n1, std::vector<Load>(n2));
    for (auto &row : m)
        for (auto &v : row) v = rectpart::uniform_index(rng, 0, maxval);
    return m;
}

std::vector<Load> random_array(std::mt19937_64 &rng, int n, Load maxval) {
    std::vector<Load> a(n);
    for (auto &v : a) v = rectpart::uniform_index(rng, 0, maxval);
    return a;
}

rectpart::LoadMatrix to_matrix(const Mat &m) { return rectpart::LoadMatrix::from_rows(m); }

}  // namespace oracle
