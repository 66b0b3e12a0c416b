#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <string>

#include "discovery.hpp"
#include "errors.hpp"

namespace kac {

const char* to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::Dag: return "dag";
        case GraphKind::Cpdag: return "cpdag";
        case GraphKind::Pag: return "pag";
        case GraphKind::Pdag: return "pdag";
    }
    return "?";
}

MixedGraph::MixedGraph(GraphKind kind, std::vector<std::string> labels)
    : kind_(kind), labels_(std::move(labels)), cells_(labels_.size() * labels_.size(), kNoEdge) {
    std::vector<std::string> sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InputError("duplicate node label in graph");
    }
}

MixedGraph MixedGraph::with_default_labels(GraphKind kind, int p) {
    if (p < 0) throw InputError("negative node count");
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(p));
    for (int v = 0; v < p; ++v) labels.push_back("X" + std::to_string(v + 1));
    return MixedGraph(kind, std::move(labels));
}

std::optional<int> MixedGraph::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<int>(it - labels_.begin());
}

void MixedGraph::check_index(int v) const {
    if (v < 0 || v >= size()) {
        throw InputError("node index " + std::to_string(v) + " out of range for graph with " +
                         std::to_string(size()) + " nodes");
    }
}

bool MixedGraph::adjacent(int a, int b) const {
    check_index(a);
    check_index(b);
    return cells_[cell(a, b)] != kNoEdge;
}

Mark MixedGraph::mark_at(int a, int b) const {
    if (!adjacent(a, b)) {
        throw InputError("no edge between " + label(a) + " and " + label(b));
    }
    return static_cast<Mark>(cells_[cell(a, b)]);
}

void MixedGraph::add_edge(int a, int b, Mark at_a, Mark at_b) {
    check_index(a);
    check_index(b);
    if (a == b) throw InputError("self-loop on " + label(a));
    if (cells_[cell(a, b)] != kNoEdge) {
        throw InputError("duplicate edge " + label(a) + " - " + label(b));
    }
    cells_[cell(a, b)] = static_cast<std::int8_t>(at_b);
    cells_[cell(b, a)] = static_cast<std::int8_t>(at_a);
}

void MixedGraph::remove_edge(int a, int b) {
    check_index(a);
    check_index(b);
    cells_[cell(a, b)] = kNoEdge;
    cells_[cell(b, a)] = kNoEdge;
}

void MixedGraph::set_mark(int a, int b, Mark mark) {
    if (!adjacent(a, b)) {
        throw InputError("no edge between " + label(a) + " and " + label(b));
    }
    cells_[cell(a, b)] = static_cast<std::int8_t>(mark);
}

std::vector<int> MixedGraph::neighbors(int v) const {
    check_index(v);
    std::vector<int> out;
    for (int u = 0; u < size(); ++u) {
        if (cells_[cell(v, u)] != kNoEdge) out.push_back(u);
    }
    return out;
}

std::vector<int> MixedGraph::parents(int v) const {
    std::vector<int> out;
    for (int u : neighbors(v)) {
        if (is_directed(u, v)) out.push_back(u);
    }
    return out;
}

std::vector<int> MixedGraph::children(int v) const {
    std::vector<int> out;
    for (int u : neighbors(v)) {
        if (is_directed(v, u)) out.push_back(u);
    }
    return out;
}

std::size_t MixedGraph::edge_count() const {
    std::size_t count = 0;
    for (auto c : cells_) count += (c != kNoEdge);
    return count / 2;
}

std::vector<Edge> MixedGraph::edges() const {
    std::vector<Edge> out;
    for (int i = 0; i < size(); ++i) {
        for (int j = i + 1; j < size(); ++j) {
            if (cells_[cell(i, j)] != kNoEdge) {
                out.push_back({i, j, static_cast<Mark>(cells_[cell(j, i)]),
                               static_cast<Mark>(cells_[cell(i, j)])});
            }
        }
    }
    return out;
}

void MixedGraph::reset_marks(Mark mark) {
    for (auto& c : cells_) {
        if (c != kNoEdge) c = static_cast<std::int8_t>(mark);
    }
}

void MixedGraph::validate() const {
    for (const auto& e : edges()) {
        const bool directed = (e.at_i == Mark::Tail && e.at_j == Mark::Arrow) ||
                              (e.at_i == Mark::Arrow && e.at_j == Mark::Tail);
        const bool has_circle = e.at_i == Mark::Circle || e.at_j == Mark::Circle;
        if (kind_ == GraphKind::Dag && !directed) {
            throw InputError("DAG edge " + label(e.i) + " - " + label(e.j) + " is not directed");
        }
        if ((kind_ == GraphKind::Cpdag || kind_ == GraphKind::Pdag) && has_circle) {
            throw InputError("circle mark on CPDAG edge " + label(e.i) + " - " + label(e.j));
        }
    }
    if (kind_ == GraphKind::Dag && !is_acyclic(*this)) {
        throw InputError("DAG contains a directed cycle");
    }
}

std::vector<int> topological_order(const MixedGraph& dag) {
    const int p = dag.size();
    std::vector<int> indegree(static_cast<std::size_t>(p), 0);
    for (int v = 0; v < p; ++v) indegree[static_cast<std::size_t>(v)] = static_cast<int>(dag.parents(v).size());
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int v = 0; v < p; ++v) {
        if (indegree[static_cast<std::size_t>(v)] == 0) ready.push(v);
    }
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(p));
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int c : dag.children(v)) {
            if (--indegree[static_cast<std::size_t>(c)] == 0) ready.push(c);
        }
    }
    return order;
}

bool is_acyclic(const MixedGraph& g) {
    return static_cast<int>(topological_order(g).size()) == g.size();
}

std::vector<bool> ancestors_of(const MixedGraph& dag, std::span<const int> targets) {
    std::vector<bool> mark(static_cast<std::size_t>(dag.size()), false);
    std::deque<int> queue;
    for (int t : targets) {
        if (!mark[static_cast<std::size_t>(t)]) {
            mark[static_cast<std::size_t>(t)] = true;
            queue.push_back(t);
        }
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int u : dag.parents(v)) {
            if (!mark[static_cast<std::size_t>(u)]) {
                mark[static_cast<std::size_t>(u)] = true;
                queue.push_back(u);
            }
        }
    }
    return mark;
}

void SepsetTable::set(int a, int b, std::vector<int> conditioning) {
    if (a == b) throw InputError("sepset for identical nodes");
    for (int v : conditioning) {
        if (v == a || v == b) throw InputError("sepset contains one of its own endpoints");
    }
    entries_[key(a, b)] = std::move(conditioning);
}

bool SepsetTable::contains(int a, int b) const { return entries_.count(key(a, b)) != 0; }

const std::vector<int>* SepsetTable::find(int a, int b) const {
    auto it = entries_.find(key(a, b));
    return it == entries_.end() ? nullptr : &it->second;
}

bool SepsetTable::separates_via(int a, int b, int v) const {
    const auto* s = find(a, b);
    return s != nullptr && std::find(s->begin(), s->end(), v) != s->end();
}

bool d_separated(const MixedGraph& dag, int i, int j, std::span<const int> conditioning) {
    const int p = dag.size();
    if (i < 0 || i >= p || j < 0 || j >= p) throw InputError("d-separation query index out of range");
    if (i == j) throw InputError("d-separation query with identical endpoints");
    std::vector<bool> observed(static_cast<std::size_t>(p), false);
    for (int s : conditioning) {
        if (s < 0 || s >= p) throw InputError("conditioning index out of range");
        if (s == i || s == j) throw InputError("conditioning set contains a query endpoint");
        observed[static_cast<std::size_t>(s)] = true;
    }
    const std::vector<bool> opens_collider = ancestors_of(dag, conditioning);

    // State: node plus whether the trail arrived from a child (up) or a parent (down).
    enum Dir { Up = 0, Down = 1 };
    std::vector<bool> visited(static_cast<std::size_t>(2 * p), false);
    std::deque<std::pair<int, Dir>> queue{{i, Up}};
    while (!queue.empty()) {
        auto [v, dir] = queue.front();
        queue.pop_front();
        const std::size_t state = static_cast<std::size_t>(2 * v + dir);
        if (visited[state]) continue;
        visited[state] = true;
        const bool v_observed = observed[static_cast<std::size_t>(v)];
        if (v == j) return false;
        if (dir == Up && !v_observed) {
            for (int u : dag.parents(v)) queue.emplace_back(u, Up);
            for (int c : dag.children(v)) queue.emplace_back(c, Down);
        } else if (dir == Down) {
            if (!v_observed) {
                for (int c : dag.children(v)) queue.emplace_back(c, Down);
            }
            if (opens_collider[static_cast<std::size_t>(v)]) {
                for (int u : dag.parents(v)) queue.emplace_back(u, Up);
            }
        }
    }
    return true;
}

MixedGraph dag_to_cpdag(const MixedGraph& dag) {
    if (dag.kind() != GraphKind::Dag) throw InputError("dag_to_cpdag expects a DAG");
    dag.validate();
    MixedGraph pattern(GraphKind::Pdag, dag.labels());
    for (const auto& e : dag.edges()) pattern.add_undirected(e.i, e.j);
    const int p = dag.size();
    for (int k = 0; k < p; ++k) {
        const auto parents = dag.parents(k);
        for (std::size_t x = 0; x < parents.size(); ++x) {
            for (std::size_t y = x + 1; y < parents.size(); ++y) {
                if (!dag.adjacent(parents[x], parents[y])) {
                    pattern.orient(parents[x], k);
                    pattern.orient(parents[y], k);
                }
            }
        }
    }
    return apply_meek_rules(pattern);
}

}  // namespace kac
