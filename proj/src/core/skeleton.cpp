#include <algorithm>
#include <string>

#include "discovery.hpp"
#include "errors.hpp"
#include "subsets.hpp"

namespace kac {

void SearchConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParamError("alpha must lie in (0, 1)");
    if (max_cond_size && *max_cond_size < 0) throw ParamError("max_cond_size must be non-negative");
}

SkeletonResult pc_skeleton(const IndependenceTest& test, int p, const SearchConfig& cfg) {
    return pc_skeleton(test, MixedGraph::with_default_labels(GraphKind::Pdag, p).labels(), cfg);
}

SkeletonResult pc_skeleton(const IndependenceTest& test, std::vector<std::string> labels, const SearchConfig& cfg) {
    cfg.validate();
    const int p = static_cast<int>(labels.size());
    if (p < 1) throw InputError("skeleton search needs at least one variable");
    SkeletonResult out{MixedGraph(GraphKind::Pdag, std::move(labels)), {}};
    MixedGraph& g = out.graph;
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) g.add_undirected(i, j);
    }

    // Tries every size-`level` subset of `pool`; records and returns true on independence.
    auto separate = [&](int i, int j, const std::vector<int>& pool, int level) {
        bool found = false;
        for_each_subset(pool, static_cast<std::size_t>(level), [&](const std::vector<int>& s) {
            if (test(i, j, s)) {
                out.sepsets.set(i, j, s);
                found = true;
                return false;
            }
            return true;
        });
        return found;
    };

    for (int level = 0;; ++level) {
        if (cfg.max_cond_size && level > *cfg.max_cond_size) break;
        std::vector<std::vector<int>> snapshot(static_cast<std::size_t>(p));
        if (cfg.stable_skeleton) {
            for (int v = 0; v < p; ++v) snapshot[static_cast<std::size_t>(v)] = g.neighbors(v);
        }
        bool any_testable = false;
        for (int i = 0; i < p; ++i) {
            for (int j = i + 1; j < p; ++j) {
                if (!g.adjacent(i, j)) continue;
                for (int side = 0; side < 2; ++side) {
                    const int from = side == 0 ? i : j;
                    const int other = side == 0 ? j : i;
                    std::vector<int> pool =
                        cfg.stable_skeleton ? snapshot[static_cast<std::size_t>(from)] : g.neighbors(from);
                    pool.erase(std::remove(pool.begin(), pool.end(), other), pool.end());
                    if (static_cast<int>(pool.size()) < level) continue;
                    any_testable = true;
                    if (separate(i, j, pool, level)) {
                        g.remove_edge(i, j);
                        break;
                    }
                }
            }
        }
        if (!any_testable) break;
    }
    return out;
}

}  // namespace kac
