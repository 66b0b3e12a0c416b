#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kac {

enum class Mark : std::uint8_t { Tail, Arrow, Circle };

enum class GraphKind { Dag, Cpdag, Pag, Pdag };

const char* to_string(GraphKind kind);

/// One edge in normalized form: i < j, marks stored per endpoint.
struct Edge {
    int i;
    int j;
    Mark at_i;
    Mark at_j;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Graph with typed endpoint marks covering DAGs, CPDAGs, PDAGs and PAGs.
///
/// Storage is a dense p x p table where cell (a, b) holds the mark at b on
/// the edge a - b, so every query is O(1) and direction lives purely in the
/// marks. Validation of the per-kind invariants is explicit (validate()),
/// since search algorithms pass through intermediate states.
class MixedGraph {
public:
    MixedGraph() = default;
    MixedGraph(GraphKind kind, std::vector<std::string> labels);

    /// Graph with labels X1..Xp.
    static MixedGraph with_default_labels(GraphKind kind, int p);

    int size() const { return static_cast<int>(labels_.size()); }
    GraphKind kind() const { return kind_; }
    void set_kind(GraphKind kind) { kind_ = kind; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }
    std::optional<int> index_of(const std::string& label) const;

    bool adjacent(int a, int b) const;
    /// Mark at `b` on the edge a - b. Requires the edge to exist.
    Mark mark_at(int a, int b) const;

    void add_edge(int a, int b, Mark at_a, Mark at_b);
    void add_directed(int from, int to) { add_edge(from, to, Mark::Tail, Mark::Arrow); }
    void add_undirected(int a, int b) { add_edge(a, b, Mark::Tail, Mark::Tail); }
    void remove_edge(int a, int b);
    /// Sets the mark at `b` on the existing edge a - b.
    void set_mark(int a, int b, Mark mark);
    void orient(int from, int to) {
        set_mark(to, from, Mark::Tail);
        set_mark(from, to, Mark::Arrow);
    }

    /// a -> b
    bool is_directed(int a, int b) const {
        return adjacent(a, b) && mark_at(b, a) == Mark::Tail && mark_at(a, b) == Mark::Arrow;
    }
    /// a - b with tails at both ends.
    bool is_undirected(int a, int b) const {
        return adjacent(a, b) && mark_at(b, a) == Mark::Tail && mark_at(a, b) == Mark::Tail;
    }

    std::vector<int> neighbors(int v) const;
    std::vector<int> parents(int v) const;
    std::vector<int> children(int v) const;
    std::size_t edge_count() const;
    std::vector<Edge> edges() const;

    /// Same edges, all marks replaced by the given mark pair (used to reset to o-o).
    void reset_marks(Mark mark);

    /// Checks the per-kind invariants; throws InputError on violation.
    void validate() const;

    friend bool operator==(const MixedGraph& a, const MixedGraph& b) {
        return a.kind_ == b.kind_ && a.labels_ == b.labels_ && a.cells_ == b.cells_;
    }

private:
    void check_index(int v) const;
    std::size_t cell(int a, int b) const {
        return static_cast<std::size_t>(a) * labels_.size() + static_cast<std::size_t>(b);
    }

    static constexpr std::int8_t kNoEdge = -1;

    GraphKind kind_ = GraphKind::Dag;
    std::vector<std::string> labels_;
    std::vector<std::int8_t> cells_;
};

/// Directed graph acyclicity (Tail-Arrow edges only are followed).
bool is_acyclic(const MixedGraph& g);

/// Topological order of a DAG; smallest index first among ready nodes.
std::vector<int> topological_order(const MixedGraph& dag);

/// Nodes with a directed path to any node in `targets`, targets included.
std::vector<bool> ancestors_of(const MixedGraph& dag, std::span<const int> targets);

/// Separation sets recorded during skeleton search, keyed by unordered pair.
class SepsetTable {
public:
    void set(int a, int b, std::vector<int> conditioning);
    bool contains(int a, int b) const;
    /// Recorded set, or nullptr when the pair was never separated.
    const std::vector<int>* find(int a, int b) const;
    bool separates_via(int a, int b, int v) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<std::pair<int, int>, std::vector<int>>& entries() const { return entries_; }

private:
    static std::pair<int, int> key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }
    std::map<std::pair<int, int>, std::vector<int>> entries_;
};

/// d-separation of i and j given `conditioning` in a DAG, by reachability
/// over (node, direction) states. O(p + |E|) per query.
bool d_separated(const MixedGraph& dag, int i, int j, std::span<const int> conditioning);

/// CPDAG of the Markov equivalence class of `dag`.
MixedGraph dag_to_cpdag(const MixedGraph& dag);

/// PAG over the non-latent nodes, produced by FCI with d-separation as a perfect
/// independence oracle. Output labels keep the DAG's labels in index order.
MixedGraph true_pag(const MixedGraph& dag, std::span<const int> latents);

}  // namespace kac
