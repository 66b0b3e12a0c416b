#include <algorithm>
#include <deque>
#include <string>

#include "discovery.hpp"
#include "errors.hpp"
#include "subsets.hpp"

namespace kac {
namespace {

// Edge-mark shorthand: mark at `b` on the edge a - b.
class MarkView {
public:
    explicit MarkView(MixedGraph& g) : g_(g) {}
    bool adj(int a, int b) const { return g_.adjacent(a, b); }
    Mark at(int a, int b) const { return g_.mark_at(a, b); }
    bool is(int a, int b, Mark m) const { return g_.adjacent(a, b) && g_.mark_at(a, b) == m; }
    /// a -> b
    bool directed(int a, int b) const { return is(a, b, Mark::Arrow) && is(b, a, Mark::Tail); }
    /// Edge a - b can be part of a potentially directed path from a to b.
    bool potentially_directed(int a, int b) const {
        return adj(a, b) && at(b, a) != Mark::Arrow && at(a, b) != Mark::Tail;
    }
    void set(int a, int b, Mark m) { g_.set_mark(a, b, m); }
    std::vector<int> nbrs(int v) const { return g_.neighbors(v); }
    int size() const { return g_.size(); }

private:
    MixedGraph& g_;
};

void orient_colliders(MixedGraph& g, const SepsetTable& sepsets) {
    const int p = g.size();
    const MixedGraph skeleton = g;
    for (int i = 0; i < p; ++i) {
        for (int k = 0; k < p; ++k) {
            if (k == i || !skeleton.adjacent(i, k)) continue;
            for (int j = i + 1; j < p; ++j) {
                if (j == k || !skeleton.adjacent(k, j) || skeleton.adjacent(i, j)) continue;
                if (sepsets.separates_via(i, j, k)) continue;
                g.set_mark(i, k, Mark::Arrow);
                g.set_mark(j, k, Mark::Arrow);
            }
        }
    }
}

// For each node x: nodes reachable from x along paths whose every inner
// triple <a, b, c> has b as a collider or a, c adjacent.
std::vector<std::vector<int>> possible_d_sep(MixedGraph& g) {
    const MarkView m(g);
    const int p = g.size();
    std::vector<std::vector<int>> out(static_cast<std::size_t>(p));
    for (int x = 0; x < p; ++x) {
        std::vector<bool> member(static_cast<std::size_t>(p), false);
        std::vector<bool> seen(static_cast<std::size_t>(p * p), false);
        std::deque<std::pair<int, int>> queue;
        for (int b : m.nbrs(x)) {
            member[static_cast<std::size_t>(b)] = true;
            seen[static_cast<std::size_t>(x * p + b)] = true;
            queue.emplace_back(x, b);
        }
        while (!queue.empty()) {
            auto [a, b] = queue.front();
            queue.pop_front();
            for (int c : m.nbrs(b)) {
                if (c == a || c == x) continue;
                const bool collider = m.at(a, b) == Mark::Arrow && m.at(c, b) == Mark::Arrow;
                if (!collider && !m.adj(a, c)) continue;
                member[static_cast<std::size_t>(c)] = true;
                const auto state = static_cast<std::size_t>(b * p + c);
                if (!seen[state]) {
                    seen[state] = true;
                    queue.emplace_back(b, c);
                }
            }
        }
        for (int v = 0; v < p; ++v) {
            if (member[static_cast<std::size_t>(v)]) out[static_cast<std::size_t>(x)].push_back(v);
        }
    }
    return out;
}

// Uncovered potentially directed path prev -> cur -> ... -> target, avoiding `banned`.
bool uncovered_pd_path(const MarkView& m, int prev, int cur, int target, std::vector<bool>& on_path, int banned) {
    for (int c : m.nbrs(cur)) {
        if (c == banned || on_path[static_cast<std::size_t>(c)]) continue;
        if (!m.potentially_directed(cur, c) || m.adj(prev, c)) continue;
        if (c == target) return true;
        on_path[static_cast<std::size_t>(c)] = true;
        const bool found = uncovered_pd_path(m, cur, c, target, on_path, banned);
        on_path[static_cast<std::size_t>(c)] = false;
        if (found) return true;
    }
    return false;
}

bool rule1(MarkView& m) {
    bool changed = false;
    for (int b = 0; b < m.size(); ++b) {
        for (int a : m.nbrs(b)) {
            if (m.at(a, b) != Mark::Arrow) continue;
            for (int c : m.nbrs(b)) {
                if (c == a || m.at(c, b) != Mark::Circle || m.adj(a, c)) continue;
                m.set(c, b, Mark::Tail);
                m.set(b, c, Mark::Arrow);
                changed = true;
            }
        }
    }
    return changed;
}

bool rule2(MarkView& m) {
    bool changed = false;
    for (int a = 0; a < m.size(); ++a) {
        for (int c : m.nbrs(a)) {
            if (m.at(a, c) != Mark::Circle) continue;
            for (int b : m.nbrs(a)) {
                if (b == c || !m.adj(b, c)) continue;
                const bool via_tail_first = m.directed(a, b) && m.at(b, c) == Mark::Arrow;
                const bool via_tail_second = m.at(a, b) == Mark::Arrow && m.directed(b, c);
                if (via_tail_first || via_tail_second) {
                    m.set(a, c, Mark::Arrow);
                    changed = true;
                    break;
                }
            }
        }
    }
    return changed;
}

bool rule3(MarkView& m) {
    bool changed = false;
    for (int t = 0; t < m.size(); ++t) {
        for (int b : m.nbrs(t)) {
            if (m.at(t, b) != Mark::Circle) continue;
            std::vector<int> sides;
            for (int x : m.nbrs(b)) {
                if (x != t && m.adj(x, t) && m.at(x, b) == Mark::Arrow && m.at(x, t) == Mark::Circle) sides.push_back(x);
            }
            bool fired = false;
            for (std::size_t i = 0; i < sides.size() && !fired; ++i) {
                for (std::size_t j = i + 1; j < sides.size() && !fired; ++j) {
                    if (!m.adj(sides[i], sides[j])) fired = true;
                }
            }
            if (fired) {
                m.set(t, b, Mark::Arrow);
                changed = true;
            }
        }
    }
    return changed;
}

// Discriminating path <theta, ..., a, b, c> for b with b o-* c.
bool rule4(MarkView& m, const SepsetTable& sepsets) {
    bool changed = false;
    const int p = m.size();
    for (int b = 0; b < p; ++b) {
        for (int c : m.nbrs(b)) {
            if (m.at(c, b) != Mark::Circle) continue;
            bool fired = false;
            for (int a : m.nbrs(b)) {
                if (fired) break;
                if (a == c || !m.directed(a, c) || m.at(b, a) != Mark::Arrow) continue;
                std::vector<bool> visited(static_cast<std::size_t>(p), false);
                visited[static_cast<std::size_t>(a)] = visited[static_cast<std::size_t>(b)] =
                    visited[static_cast<std::size_t>(c)] = true;
                std::deque<int> queue{a};
                while (!queue.empty() && !fired) {
                    const int cur = queue.front();
                    queue.pop_front();
                    for (int t : m.nbrs(cur)) {
                        if (visited[static_cast<std::size_t>(t)] || m.at(t, cur) != Mark::Arrow) continue;
                        if (!m.adj(t, c)) {
                            if (sepsets.separates_via(t, c, b)) {
                                m.set(c, b, Mark::Tail);
                                m.set(b, c, Mark::Arrow);
                            } else {
                                m.set(a, b, Mark::Arrow);
                                m.set(c, b, Mark::Arrow);
                                m.set(b, c, Mark::Arrow);
                            }
                            fired = true;
                            break;
                        }
                        if (m.directed(t, c) && m.at(cur, t) == Mark::Arrow) {
                            visited[static_cast<std::size_t>(t)] = true;
                            queue.push_back(t);
                        }
                    }
                }
            }
            if (fired) changed = true;
        }
    }
    return changed;
}

bool rule8(MarkView& m) {
    bool changed = false;
    for (int a = 0; a < m.size(); ++a) {
        for (int c : m.nbrs(a)) {
            if (m.at(a, c) != Mark::Arrow || m.at(c, a) != Mark::Circle) continue;
            for (int b : m.nbrs(a)) {
                if (b == c || !m.directed(b, c)) continue;
                if (m.at(b, a) == Mark::Tail && m.at(a, b) != Mark::Tail) {
                    m.set(c, a, Mark::Tail);
                    changed = true;
                    break;
                }
            }
        }
    }
    return changed;
}

bool rule9(MarkView& m) {
    bool changed = false;
    const int p = m.size();
    for (int a = 0; a < p; ++a) {
        for (int c : m.nbrs(a)) {
            if (m.at(a, c) != Mark::Arrow || m.at(c, a) != Mark::Circle) continue;
            for (int b : m.nbrs(a)) {
                if (b == c || m.adj(b, c) || !m.potentially_directed(a, b)) continue;
                std::vector<bool> on_path(static_cast<std::size_t>(p), false);
                on_path[static_cast<std::size_t>(a)] = on_path[static_cast<std::size_t>(b)] = true;
                if (uncovered_pd_path(m, a, b, c, on_path, -1)) {
                    m.set(c, a, Mark::Tail);
                    changed = true;
                    break;
                }
            }
        }
    }
    return changed;
}

bool rule10(MarkView& m) {
    bool changed = false;
    const int p = m.size();
    for (int a = 0; a < p; ++a) {
        for (int c : m.nbrs(a)) {
            if (m.at(a, c) != Mark::Arrow || m.at(c, a) != Mark::Circle) continue;
            std::vector<int> parents;
            for (int x : m.nbrs(c)) {
                if (x != a && m.directed(x, c)) parents.push_back(x);
            }
            if (parents.size() < 2) continue;
            // First steps from a that start an uncovered p.d. path to each parent.
            std::vector<std::vector<int>> starts(parents.size());
            for (std::size_t k = 0; k < parents.size(); ++k) {
                for (int mu : m.nbrs(a)) {
                    if (mu == c || !m.potentially_directed(a, mu)) continue;
                    bool reaches = mu == parents[k];
                    if (!reaches) {
                        std::vector<bool> on_path(static_cast<std::size_t>(p), false);
                        on_path[static_cast<std::size_t>(a)] = on_path[static_cast<std::size_t>(mu)] = true;
                        reaches = uncovered_pd_path(m, a, mu, parents[k], on_path, c);
                    }
                    if (reaches) starts[k].push_back(mu);
                }
            }
            bool fired = false;
            for (std::size_t x = 0; x < parents.size() && !fired; ++x) {
                for (std::size_t y = x + 1; y < parents.size() && !fired; ++y) {
                    for (int mu : starts[x]) {
                        for (int omega : starts[y]) {
                            if (mu != omega && !m.adj(mu, omega)) fired = true;
                        }
                    }
                }
            }
            if (fired) {
                m.set(c, a, Mark::Tail);
                changed = true;
            }
        }
    }
    return changed;
}

}  // namespace

MixedGraph orient_pag(const MixedGraph& skeleton, const SepsetTable& sepsets) {
    MixedGraph g = skeleton;
    g.set_kind(GraphKind::Pag);
    g.reset_marks(Mark::Circle);
    orient_colliders(g, sepsets);
    MarkView m(g);
    bool changed = true;
    while (changed) {
        changed = false;
        changed |= rule1(m);
        changed |= rule2(m);
        changed |= rule3(m);
        changed |= rule4(m, sepsets);
        changed |= rule8(m);
        changed |= rule9(m);
        changed |= rule10(m);
    }
    return g;
}

FciResult fci_search(const IndependenceTest& test, int p, const SearchConfig& cfg) {
    return fci_search(test, MixedGraph::with_default_labels(GraphKind::Pag, p).labels(), cfg);
}

FciResult fci_search(const IndependenceTest& test, std::vector<std::string> labels, const SearchConfig& cfg) {
    SkeletonResult sk = pc_skeleton(test, std::move(labels), cfg);
    MixedGraph initial = sk.graph;
    initial.set_kind(GraphKind::Pag);
    initial.reset_marks(Mark::Circle);
    orient_colliders(initial, sk.sepsets);
    const auto pdsep = possible_d_sep(initial);

    MixedGraph skeleton = sk.graph;
    for (const auto& e : initial.edges()) {
        bool removed = false;
        for (int side = 0; side < 2 && !removed; ++side) {
            const int from = side == 0 ? e.i : e.j;
            std::vector<int> pool;
            for (int v : pdsep[static_cast<std::size_t>(from)]) {
                if (v != e.i && v != e.j) pool.push_back(v);
            }
            std::size_t max_size = pool.size();
            if (cfg.max_cond_size) max_size = std::min(max_size, static_cast<std::size_t>(*cfg.max_cond_size));
            for (std::size_t k = 1; k <= max_size && !removed; ++k) {
                for_each_subset(pool, k, [&](const std::vector<int>& s) {
                    if (test(e.i, e.j, s)) {
                        sk.sepsets.set(e.i, e.j, s);
                        removed = true;
                        return false;
                    }
                    return true;
                });
            }
        }
        if (removed) skeleton.remove_edge(e.i, e.j);
    }
    return {orient_pag(skeleton, sk.sepsets), std::move(sk.sepsets)};
}

MixedGraph true_pag(const MixedGraph& dag, std::span<const int> latents) {
    if (dag.kind() != GraphKind::Dag) throw InputError("true_pag expects a DAG");
    std::vector<bool> hidden(static_cast<std::size_t>(dag.size()), false);
    for (int v : latents) {
        if (v < 0 || v >= dag.size()) throw InputError("latent index out of range");
        hidden[static_cast<std::size_t>(v)] = true;
    }
    std::vector<int> observed;
    std::vector<std::string> labels;
    for (int v = 0; v < dag.size(); ++v) {
        if (!hidden[static_cast<std::size_t>(v)]) {
            observed.push_back(v);
            labels.push_back(dag.label(v));
        }
    }
    if (observed.empty()) throw InputError("every node is latent");
    return fci_search(oracle_ci_test(dag, observed), std::move(labels), SearchConfig{}).pag;
}

}  // namespace kac
