#include "metrics.hpp"

#include <algorithm>

#include "errors.hpp"
#include "text_util.hpp"

namespace kac {
namespace {

GraphKind comparable(GraphKind k) { return k == GraphKind::Pdag ? GraphKind::Cpdag : k; }

}  // namespace

ShdReport classify_edges(const MixedGraph& truth, const MixedGraph& learned) {
    if (comparable(truth.kind()) != comparable(learned.kind())) {
        throw InputError(std::string("graph kinds differ: ") + to_string(truth.kind()) + " vs " +
                         to_string(learned.kind()));
    }
    if (truth.size() != learned.size()) throw InputError("graphs have different node counts");
    std::vector<int> to_learned(static_cast<std::size_t>(truth.size()));
    for (int v = 0; v < truth.size(); ++v) {
        const auto idx = learned.index_of(truth.label(v));
        if (!idx) throw InputError("node '" + truth.label(v) + "' missing from learned graph");
        to_learned[static_cast<std::size_t>(v)] = *idx;
    }
    ShdReport r;
    r.n_nodes = static_cast<std::size_t>(truth.size());
    for (int a = 0; a < truth.size(); ++a) {
        for (int b = a + 1; b < truth.size(); ++b) {
            const int la = to_learned[static_cast<std::size_t>(a)];
            const int lb = to_learned[static_cast<std::size_t>(b)];
            const bool in_truth = truth.adjacent(a, b);
            const bool in_learned = learned.adjacent(la, lb);
            if (in_truth && in_learned) {
                if (truth.mark_at(a, b) != learned.mark_at(la, lb) || truth.mark_at(b, a) != learned.mark_at(lb, la)) {
                    ++r.wrong_mark;
                } else {
                    ++r.true_edges;
                }
            } else if (in_truth) {
                ++r.missing;
            } else if (in_learned) {
                ++r.extra;
            }
        }
    }
    return r;
}

ShdReport shd(const MixedGraph& truth, const MixedGraph& learned) {
    ShdReport r = classify_edges(truth, learned);
    r.shd = r.extra + r.missing + r.wrong_mark;
    const double n = static_cast<double>(r.n_nodes);
    const double pairs = n * (n - 1.0) / 2.0;
    r.normalized = pairs > 0.0 ? static_cast<double>(r.shd) / (pairs / 2.0) : 0.0;
    return r;
}

std::string format_report_fields(const ShdReport& r) {
    return std::to_string(r.extra) + "," + std::to_string(r.missing) + "," + std::to_string(r.wrong_mark) + "," +
           std::to_string(r.shd) + "," + format_double(r.normalized);
}

}  // namespace kac
