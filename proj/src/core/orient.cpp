#include <string>

#include "discovery.hpp"
#include "errors.hpp"
#include "log.hpp"

namespace kac {

MixedGraph orient_v_structures(const MixedGraph& skeleton, const SepsetTable& sepsets, int* conflicts) {
    MixedGraph g = skeleton;
    g.set_kind(GraphKind::Pdag);
    int overwritten = 0;
    const int p = g.size();
    auto direct = [&](int from, int to) {
        if (g.mark_at(to, from) == Mark::Arrow) ++overwritten;
        g.orient(from, to);
    };
    for (int i = 0; i < p; ++i) {
        for (int k = 0; k < p; ++k) {
            if (k == i || !skeleton.adjacent(i, k)) continue;
            for (int j = i + 1; j < p; ++j) {
                if (j == k || !skeleton.adjacent(k, j) || skeleton.adjacent(i, j)) continue;
                if (sepsets.separates_via(i, j, k)) continue;
                direct(i, k);
                direct(j, k);
            }
        }
    }
    if (overwritten > 0) log::info("v-structure orientation conflicts: " + std::to_string(overwritten));
    if (conflicts) *conflicts = overwritten;
    return g;
}

namespace {

// i -> j, j - k, i and k nonadjacent  =>  j -> k
bool meek_r1(MixedGraph& g, int j, int k) {
    for (int i : g.neighbors(j)) {
        if (i != k && g.is_directed(i, j) && !g.adjacent(i, k)) {
            g.orient(j, k);
            return true;
        }
    }
    return false;
}

// i -> m -> j and i - j  =>  i -> j
bool meek_r2(MixedGraph& g, int i, int j) {
    for (int m : g.neighbors(i)) {
        if (m != j && g.is_directed(i, m) && g.adjacent(m, j) && g.is_directed(m, j)) {
            g.orient(i, j);
            return true;
        }
    }
    return false;
}

// i - k1 -> j, i - k2 -> j, k1 and k2 nonadjacent, i - j  =>  i -> j
bool meek_r3(MixedGraph& g, int i, int j) {
    std::vector<int> mids;
    for (int k : g.neighbors(i)) {
        if (k != j && g.is_undirected(i, k) && g.adjacent(k, j) && g.is_directed(k, j)) mids.push_back(k);
    }
    for (std::size_t x = 0; x < mids.size(); ++x) {
        for (std::size_t y = x + 1; y < mids.size(); ++y) {
            if (!g.adjacent(mids[x], mids[y])) {
                g.orient(i, j);
                return true;
            }
        }
    }
    return false;
}

// i - j, i - k -> l -> j, i adjacent to l, k and j nonadjacent  =>  i -> j
bool meek_r4(MixedGraph& g, int i, int j) {
    for (int k : g.neighbors(i)) {
        if (k == j || !g.is_undirected(i, k) || g.adjacent(k, j)) continue;
        for (int l : g.neighbors(k)) {
            if (l != i && l != j && g.is_directed(k, l) && g.adjacent(l, j) && g.is_directed(l, j) &&
                g.adjacent(i, l)) {
                g.orient(i, j);
                return true;
            }
        }
    }
    return false;
}

}  // namespace

MixedGraph apply_meek_rules(MixedGraph g) {
    const int p = g.size();
    for (const auto& e : g.edges()) {
        if (e.at_i == Mark::Circle || e.at_j == Mark::Circle) throw InputError("Meek rules need a PDAG");
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < p; ++a) {
            for (int b = 0; b < p; ++b) {
                if (a == b || !g.is_undirected(a, b)) continue;
                if (meek_r1(g, a, b) || meek_r2(g, a, b) || meek_r3(g, a, b) || meek_r4(g, a, b)) changed = true;
            }
        }
    }
    g.set_kind(GraphKind::Cpdag);
    return g;
}

}  // namespace kac
