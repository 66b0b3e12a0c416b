#pragma once

#include <cstddef>
#include <string>

#include "graph.hpp"

namespace kac {

struct ShdReport {
    std::size_t extra = 0;
    std::size_t missing = 0;
    std::size_t wrong_mark = 0;
    std::size_t true_edges = 0;  // in both graphs with identical marks
    std::size_t shd = 0;
    double normalized = 0.0;
    std::size_t n_nodes = 0;
};

/// Edge-class counts between a true and a learned graph. Nodes are matched by
/// label; kinds must agree (PDAG counts as CPDAG). An edge present in both
/// graphs whose marks differ at one or both ends counts once as wrong_mark.
ShdReport classify_edges(const MixedGraph& truth, const MixedGraph& learned);

/// classify_edges plus S = extra + missing + wrong_mark and S / (C(n,2)/2).
/// A graph with fewer than two nodes has normalized score 0.
ShdReport shd(const MixedGraph& truth, const MixedGraph& learned);

/// `extra,missing,wrong_mark,shd,normalized` as written in score rows.
std::string format_report_fields(const ShdReport& r);

}  // namespace kac
