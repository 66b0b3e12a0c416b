#pragma once

#include <cstddef>
#include <vector>

namespace kac {

/// Calls `visit` on every size-k subset of `pool` in lexicographic index order.
/// `visit` returns false to stop early. Returns false if stopped.
template <typename Visit>
bool for_each_subset(const std::vector<int>& pool, std::size_t k, Visit&& visit) {
    if (k > pool.size()) return true;
    std::vector<std::size_t> pick(k);
    for (std::size_t t = 0; t < k; ++t) pick[t] = t;
    std::vector<int> subset(k);
    while (true) {
        for (std::size_t t = 0; t < k; ++t) subset[t] = pool[pick[t]];
        if (!visit(subset)) return false;
        std::size_t t = k;
        while (t > 0 && pick[t - 1] == pool.size() - k + t - 1) --t;
        if (t == 0) return true;
        ++pick[t - 1];
        for (std::size_t u = t; u < k; ++u) pick[u] = pick[u - 1] + 1;
    }
}

}  // namespace kac
