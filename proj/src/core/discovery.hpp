#pragma once

#include <optional>

#include "alignment.hpp"
#include "citest.hpp"
#include "dataset.hpp"
#include "graph.hpp"
#include "kernels.hpp"

namespace kac {

enum class Algorithm { Pc, Fci };

struct SearchConfig {
    double alpha = 0.1;
    std::optional<int> max_cond_size;  // cap on |S|; unlimited when empty
    bool stable_skeleton = true;
    Algorithm algorithm = Algorithm::Pc;

    void validate() const;
};

struct SkeletonResult {
    MixedGraph graph;  // Pdag kind, every edge Tail-Tail
    SepsetTable sepsets;
};

/// Skeleton phase of PC. Starts from the complete graph and, for conditioning
/// sizes 0, 1, 2, ..., removes i - j when some S drawn from adj(i)\{j} or
/// adj(j)\{i} makes them independent. The stable variant freezes adjacency
/// sets at the start of each level, which makes the result independent of
/// variable order.
SkeletonResult pc_skeleton(const IndependenceTest& test, std::vector<std::string> labels, const SearchConfig& cfg);
SkeletonResult pc_skeleton(const IndependenceTest& test, int p, const SearchConfig& cfg);

/// Orients i -> k <- j for each unshielded triple with k outside sepset(i, j).
/// Triples are visited lexicographically over (i, k, j) and later orientations
/// overwrite earlier ones; overwrites are counted in `conflicts`.
MixedGraph orient_v_structures(const MixedGraph& skeleton, const SepsetTable& sepsets, int* conflicts = nullptr);

/// Meek rules R1-R4 to fixpoint. Never removes edges or reverses directed ones.
MixedGraph apply_meek_rules(MixedGraph pdag);

struct FciResult {
    MixedGraph pag;
    SepsetTable sepsets;
};

/// FCI: PC skeleton, circle-mark colliders, Possible-D-SEP re-testing,
/// re-orientation, then rules R1-R4 and R8-R10 to fixpoint (no selection bias).
FciResult fci_search(const IndependenceTest& test, std::vector<std::string> labels, const SearchConfig& cfg);
FciResult fci_search(const IndependenceTest& test, int p, const SearchConfig& cfg);

/// Completes a PAG skeleton with colliders via the orientation rules. Exposed
/// for tests; fci_search calls it after the final skeleton is known.
MixedGraph orient_pag(const MixedGraph& skeleton, const SepsetTable& sepsets);

struct LearnOptions {
    bool centering = true;
    bool verbose = false;
};

/// Pseudo-correlation -> Fisher-z -> PC. Returns a CPDAG.
MixedGraph kapc(const Dataset& data, const KernelParams& params, const SearchConfig& cfg,
                const LearnOptions& options = {});

/// Pseudo-correlation -> Fisher-z -> FCI. Returns a PAG.
MixedGraph kafci(const Dataset& data, const KernelParams& params, const SearchConfig& cfg,
                 const LearnOptions& options = {});

/// Runs the search selected by cfg.algorithm on a precomputed pseudo-correlation.
MixedGraph learn_from_correlation(const PseudoCorrelationMatrix& corr, std::size_t n, const SearchConfig& cfg,
                                  bool verbose = false);

}  // namespace kac
