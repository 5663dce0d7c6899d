#pragma once

#include <algorithm>
#include <cassert>
#include <utility>

namespace rectpart::detail {

/**
 * Smallest-argmin minimization of max(inc(k), dec(k)) over [lo, hi], where
 * inc is weakly increasing and dec weakly decreasing. The max is bitonic
 * (decreasing, then increasing), so the crossover is found by binary search;
 * a second search walks to the left edge of the argmin plateau so ties
 * resolve toward the smallest index.
 */
template <class V, class FInc, class FDec>
std::pair<int, V> min_bitonic_max(int lo, int hi, FInc inc, FDec dec) {
    assert(lo <= hi);
    int a = lo, b = hi + 1;
    while (a < b) {
        int mid = a + (b - a) / 2;
        if (!(inc(mid) < dec(mid)))
            b = mid;
        else
            a = mid + 1;
    }
    const int cross = a;
    int arg = -1;
    V best{};
    auto consider = [&](int k) {
        V v = std::max<V>(inc(k), dec(k));
        if (arg < 0 || v < best) {
            best = v;
            arg = k;
        }
    };
    if (cross <= hi) consider(cross);
    if (cross - 1 >= lo) consider(cross - 1);
    a = lo;
    b = arg;
    while (a < b) {
        int mid = a + (b - a) / 2;
        if (!(best < dec(mid)))
            b = mid;
        else
            a = mid + 1;
    }
    return {a, best};
}

}  // namespace rectpart::detail
